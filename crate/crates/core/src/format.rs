//! Text formats for states and Hamiltonians, and `%g`-style number output.
//!
//! State files hold `n <count>` followed by `2^n` lines `<re> <im>` in index
//! order (qubit 1 is the most significant bit), or the single line
//! `named <name>`. Hamiltonian files hold one term per line,
//! `<coefficient> <letter><site> ...` with 1-based sites, or
//! `<coefficient> I` for the identity. In both formats blank lines and `#`
//! comments are ignored.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::named_state;
use crate::pauli::{Pauli, PauliOperator, PauliTerm};
use crate::state::{check_qubits, PureState};

/// Non-blank lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_f64(line: usize, token: &str) -> Result<f64> {
    let v: f64 = token
        .parse()
        .map_err(|_| Error::parse(line, format!("`{token}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("`{token}` is not finite")));
    }
    Ok(v)
}

/// Parses a state file. Amplitudes must be normalized within `1e-9`.
pub fn parse_state(text: &str) -> Result<PureState> {
    let mut lines = content_lines(text);
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty state file"))?;
    let head: Vec<&str> = first.split_whitespace().collect();
    match head[..] {
        ["named", name] => {
            if let Some((no, _)) = lines.next() {
                return Err(Error::parse(no, "trailing content after named state"));
            }
            named_state(name)
        }
        ["n", count] => {
            let n: usize = count
                .parse()
                .map_err(|_| Error::parse(first_no, format!("bad qubit count `{count}`")))?;
            check_qubits(n).map_err(|e| Error::parse(first_no, e.to_string()))?;
            let dim = 1usize << n;
            let mut amps = Vec::with_capacity(dim);
            let mut last = first_no;
            for (no, line) in lines {
                if amps.len() == dim {
                    return Err(Error::parse(no, "more amplitudes than 2^n"));
                }
                let tokens: Vec<&str> = line.split_whitespace().collect();
                let [re, im] = tokens[..] else {
                    return Err(Error::parse(no, "expected `<re> <im>`"));
                };
                amps.push(Complex64::new(parse_f64(no, re)?, parse_f64(no, im)?));
                last = no;
            }
            if amps.len() != dim {
                return Err(Error::parse(
                    last,
                    format!("expected {dim} amplitudes, found {}", amps.len()),
                ));
            }
            PureState::from_amplitudes(n, amps, false)
        }
        _ => Err(Error::parse(
            first_no,
            "expected `n <count>` or `named <name>`",
        )),
    }
}

/// Writes a state in the amplitude form of the state file format.
pub fn write_state(state: &PureState) -> String {
    let mut out = format!("n {}\n", state.n());
    for z in state.amplitudes() {
        out.push_str(&format!("{:e} {:e}\n", z.re, z.im));
    }
    out
}

/// Parses a Hamiltonian file. The qubit count is `n` when given, otherwise the
/// largest site index present.
pub fn parse_hamiltonian(text: &str, n: Option<usize>) -> Result<PauliOperator> {
    let mut raw: Vec<(f64, Vec<(usize, Pauli)>)> = Vec::new();
    let mut max_site = 0;
    for (no, line) in content_lines(text) {
        let mut tokens = line.split_whitespace();
        let coefficient = parse_f64(no, tokens.next().expect("non-empty line"))?;
        let factors: Vec<&str> = tokens.collect();
        let mut sites = Vec::new();
        match factors[..] {
            [] => return Err(Error::parse(no, "missing Pauli string")),
            ["I"] => {}
            _ => {
                for f in factors {
                    let mut chars = f.chars();
                    let letter = chars
                        .next()
                        .and_then(Pauli::from_char)
                        .filter(|p| *p != Pauli::I)
                        .ok_or_else(|| Error::parse(no, format!("bad factor `{f}`")))?;
                    let site: usize = chars
                        .as_str()
                        .parse()
                        .ok()
                        .filter(|&s| s >= 1)
                        .ok_or_else(|| Error::parse(no, format!("bad site in `{f}`")))?;
                    if sites.iter().any(|&(s, _)| s == site) {
                        return Err(Error::parse(no, format!("site {site} repeated")));
                    }
                    max_site = max_site.max(site);
                    sites.push((site, letter));
                }
            }
        }
        raw.push((coefficient, sites));
    }
    let n = match n {
        Some(n) if n < max_site => {
            return Err(Error::InvalidArgument(format!(
                "site {max_site} exceeds {n} qubits"
            )))
        }
        Some(n) => n,
        None if max_site == 0 => {
            return Err(Error::InvalidArgument(
                "cannot infer the qubit count from identity terms alone".into(),
            ))
        }
        None => max_site,
    };
    check_qubits(n)?;
    let terms = raw
        .into_iter()
        .map(|(c, sites)| PauliTerm::from_sites(n, &sites, c))
        .collect::<Result<Vec<_>>>()?;
    PauliOperator::from_terms(n, terms)
}

/// Writes an operator in the Hamiltonian file format. The zero operator is
/// written as `0 I`.
pub fn write_hamiltonian(op: &PauliOperator) -> String {
    if op.is_empty() {
        "0 I\n".to_string()
    } else {
        op.to_string()
    }
}

/// C-style `%.{precision}g` formatting.
pub fn format_g(x: f64, precision: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let p = precision.max(1);
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

/// `%.12g`, the CSV number format.
pub fn g12(x: f64) -> String {
    format_g(x, 12)
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
