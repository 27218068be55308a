//! OpenQASM 2.0 export and a strict line-oriented reader for the same subset.
//!
//! Only `h`, `x`, `z` and `cx` on a single `qreg` are understood. Anything
//! else, including `measure`, `barrier` and `creg`, is rejected with the line
//! it appeared on, so that `parse_qasm(export_qasm(c)) == c` stays meaningful.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Circuit, Gate};
use crate::qcore::{QubitIndex, MAX_QUBITS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct QasmError {
    pub line: usize,
    pub kind: QasmErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QasmErrorKind {
    #[error("expected `OPENQASM 2.0;` as the first statement")]
    MissingHeader,
    #[error("unsupported include `{0}`")]
    UnsupportedInclude(String),
    #[error("unsupported gate `{0}`")]
    UnsupportedGate(String),
    #[error("unsupported statement `{0}`")]
    UnsupportedStatement(String),
    #[error("malformed register reference `{0}`")]
    MalformedRegister(String),
    #[error("qubit index {index} is out of range for register of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("register size {0} is outside 1..={max}", max = MAX_QUBITS)]
    RegisterSize(usize),
    #[error("gate used before any `qreg` declaration")]
    MissingRegister,
    #[error("only one `qreg` declaration is supported")]
    DuplicateRegister,
    #[error("`{gate}` takes {expected} operand(s), found {found}")]
    Arity {
        gate: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("syntax error: {0}")]
    Syntax(String),
}

const HEADER: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n// qubit label k (1-based) is q[k-1]\n";

/// Renders `circuit` as OpenQASM 2.0. The output is byte-for-byte deterministic
/// and ends with a newline.
pub fn export_qasm(circuit: &Circuit) -> String {
    let mut out = String::from(HEADER);
    writeln!(out, "qreg q[{}];", circuit.n_qubits()).unwrap();
    for gate in circuit.gates() {
        let q = |i: QubitIndex| i.get() - 1;
        match *gate {
            Gate::H(i) => writeln!(out, "h q[{}];", q(i)),
            Gate::X(i) => writeln!(out, "x q[{}];", q(i)),
            Gate::Z(i) => writeln!(out, "z q[{}];", q(i)),
            Gate::Cnot { control, target } => {
                writeln!(out, "cx q[{}],q[{}];", q(control), q(target))
            }
        }
        .unwrap();
    }
    out
}

struct Register {
    name: String,
    size: usize,
}

/// Parses the subset written by [`export_qasm`].
pub fn parse_qasm(text: &str) -> Result<Circuit, QasmError> {
    let mut seen_header = false;
    let mut register: Option<Register> = None;
    let mut circuit: Option<Circuit> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let err = |kind| QasmError { line, kind };

        let code = raw.split("//").next().unwrap_or("").trim();
        if code.is_empty() {
            continue;
        }
        let stmt = code
            .strip_suffix(';')
            .ok_or_else(|| err(QasmErrorKind::Syntax("missing `;`".into())))?
            .trim();
        if stmt.contains(';') {
            return Err(err(QasmErrorKind::Syntax(
                "one statement per line expected".into(),
            )));
        }

        let (head, rest) = match stmt.find(char::is_whitespace) {
            Some(pos) => (&stmt[..pos], stmt[pos..].trim()),
            None => (stmt, ""),
        };

        if !seen_header {
            if head == "OPENQASM" && rest == "2.0" {
                seen_header = true;
                continue;
            }
            return Err(err(QasmErrorKind::MissingHeader));
        }

        match head {
            "OPENQASM" => return Err(err(QasmErrorKind::Syntax("repeated header".into()))),
            "include" => {
                if rest != "\"qelib1.inc\"" {
                    return Err(err(QasmErrorKind::UnsupportedInclude(rest.to_string())));
                }
            }
            "qreg" => {
                if register.is_some() {
                    return Err(err(QasmErrorKind::DuplicateRegister));
                }
                let (name, size) =
                    split_reference(rest).ok_or_else(|| err(QasmErrorKind::MalformedRegister(rest.into())))?;
                if size == 0 || size > MAX_QUBITS {
                    return Err(err(QasmErrorKind::RegisterSize(size)));
                }
                circuit = Some(Circuit::new(size).expect("size checked"));
                register = Some(Register {
                    name: name.to_string(),
                    size,
                });
            }
            "h" | "x" | "z" | "cx" => {
                let reg = register
                    .as_ref()
                    .ok_or_else(|| err(QasmErrorKind::MissingRegister))?;
                let operands = rest
                    .split(',')
                    .map(|op| resolve_operand(op.trim(), reg).map_err(err))
                    .collect::<Result<Vec<_>, _>>()?;
                let expected = if head == "cx" { 2 } else { 1 };
                if operands.len() != expected {
                    return Err(err(QasmErrorKind::Arity {
                        gate: head.to_string(),
                        expected,
                        found: operands.len(),
                    }));
                }
                let gate = match head {
                    "h" => Gate::H(operands[0]),
                    "x" => Gate::X(operands[0]),
                    "z" => Gate::Z(operands[0]),
                    _ => Gate::cnot(operands[0], operands[1])
                        .map_err(|e| err(QasmErrorKind::InvalidGate(e.to_string())))?,
                };
                circuit
                    .as_mut()
                    .expect("register declared")
                    .push(gate)
                    .map_err(|e| err(QasmErrorKind::InvalidGate(e.to_string())))?;
            }
            "measure" | "barrier" | "creg" | "reset" | "if" | "gate" | "opaque" => {
                return Err(err(QasmErrorKind::UnsupportedStatement(head.to_string())))
            }
            other => return Err(err(QasmErrorKind::UnsupportedGate(other.to_string()))),
        }
    }

    if !seen_header {
        return Err(QasmError {
            line: last_line.max(1),
            kind: QasmErrorKind::MissingHeader,
        });
    }
    circuit.ok_or(QasmError {
        line: last_line,
        kind: QasmErrorKind::MissingRegister,
    })
}

/// Splits `name[index]` into its parts.
fn split_reference(text: &str) -> Option<(&str, usize)> {
    let (name, rest) = text.split_once('[')?;
    let index = rest.strip_suffix(']')?;
    let name = name.trim();
    let valid_name = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_lowercase())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid_name {
        return None;
    }
    Some((name, index.trim().parse().ok()?))
}

fn resolve_operand(text: &str, reg: &Register) -> Result<QubitIndex, QasmErrorKind> {
    let (name, index) =
        split_reference(text).ok_or_else(|| QasmErrorKind::MalformedRegister(text.to_string()))?;
    if name != reg.name {
        return Err(QasmErrorKind::MalformedRegister(text.to_string()));
    }
    if index >= reg.size {
        return Err(QasmErrorKind::IndexOutOfRange {
            index,
            size: reg.size,
        });
    }
    Ok(QubitIndex::new(index + 1).expect("index below register size"))
}
