//! DIMACS CNF reader and writer.
//!
//! Besides the standard format, the comment `c vars-main k` marks the first
//! `k` variables as main variables; the remaining ones are auxiliary. Other
//! tools treat it as an ordinary comment.

use std::fmt::Write as _;
use std::io::Read;

use crate::cnf::{Clause, Cnf, Literal};
use crate::error::{Error, Result};

const MAIN_VARS_TAG: &str = "vars-main";

pub fn parse_dimacs(input: &[u8]) -> Result<Cnf> {
    let text = std::str::from_utf8(input).map_err(|e| Error::parse(0, e.to_string()))?;
    parse_dimacs_str(text)
}

pub fn read_dimacs<R: Read>(mut reader: R) -> Result<Cnf> {
    let mut buf = Vec::new();
    reader.read_to_end(&mut buf)?;
    parse_dimacs(&buf)
}

pub fn parse_dimacs_str(text: &str) -> Result<Cnf> {
    let mut header: Option<(u32, usize)> = None;
    let mut main_vars: Option<(usize, u32)> = None;
    let mut clauses = Vec::new();
    let mut pending: Vec<Literal> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            if !(rest.is_empty() || rest.starts_with(char::is_whitespace)) {
                return Err(Error::parse(line_no, format!("unexpected token `{line}`")));
            }
            let mut words = rest.split_whitespace();
            if words.next() == Some(MAIN_VARS_TAG) {
                let k = words
                    .next()
                    .and_then(|w| w.parse::<u32>().ok())
                    .ok_or_else(|| Error::parse(line_no, "malformed `c vars-main` comment"))?;
                main_vars = Some((line_no, k));
            }
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate header"));
            }
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        let (num_vars, _) =
            header.ok_or_else(|| Error::parse(line_no, "clause data before `p cnf` header"))?;
        for tok in line.split_whitespace() {
            let value: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("invalid literal `{tok}`")))?;
            match Literal::from_dimacs(value) {
                None if value == 0 => {
                    clauses.push(Clause::new(pending.drain(..))?);
                }
                Some(lit) if lit.var() <= num_vars => pending.push(lit),
                _ => {
                    return Err(Error::parse(
                        line_no,
                        format!("literal {value} exceeds declared {num_vars} variables"),
                    ))
                }
            }
        }
    }

    let (num_vars, num_clauses) =
        header.ok_or_else(|| Error::parse(last_line, "missing `p cnf` header"))?;
    if !pending.is_empty() {
        return Err(Error::parse(
            last_line,
            "last clause is not terminated by 0",
        ));
    }
    if clauses.len() != num_clauses {
        return Err(Error::parse(
            last_line,
            format!(
                "header declares {num_clauses} clauses, found {}",
                clauses.len()
            ),
        ));
    }
    let cnf = Cnf::new(num_vars, clauses)?;
    match main_vars {
        Some((line_no, k)) if k > num_vars => Err(Error::parse(
            line_no,
            format!("vars-main {k} exceeds {num_vars} variables"),
        )),
        Some((_, k)) => cnf.with_main_vars(k),
        None => Ok(cnf),
    }
}

fn parse_header(line: &str, line_no: usize) -> Result<(u32, usize)> {
    let words: Vec<&str> = line.split_whitespace().collect();
    match words.as_slice() {
        ["p", "cnf", nv, nc] => {
            let nv = nv
                .parse()
                .map_err(|_| Error::parse(line_no, format!("invalid variable count `{nv}`")))?;
            let nc = nc
                .parse()
                .map_err(|_| Error::parse(line_no, format!("invalid clause count `{nc}`")))?;
            Ok((nv, nc))
        }
        _ => Err(Error::parse(line_no, format!("malformed header `{line}`"))),
    }
}

pub fn write_dimacs(cnf: &Cnf) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", cnf.num_vars(), cnf.len());
    if let Some(k) = cnf.main_vars() {
        let _ = writeln!(out, "c {MAIN_VARS_TAG} {k}");
    }
    for clause in cnf.clauses() {
        for lit in clause.literals() {
            let _ = write!(out, "{} ", lit.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}
