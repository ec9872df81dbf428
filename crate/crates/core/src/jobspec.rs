//! Flat key-value job files with `[ring]` and `[job]` sections. Everything
//! parses and validates before any computation starts; unknown keys are
//! rejected with their position.

use std::path::PathBuf;
use std::sync::Arc;

use crate::descriptor::{MonomialOrder, RingDescriptor};
use crate::error::{Error, Result};
use crate::parse::parse_polynomial_at;
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Resolve,
    Hk,
    Tor,
    Verdict,
    Phantom,
    TcEvidence,
    CompareReq,
    Crosscheck,
}

impl Command {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "resolve" => Some(Command::Resolve),
            "hk" => Some(Command::Hk),
            "tor" => Some(Command::Tor),
            "verdict" => Some(Command::Verdict),
            "phantom" => Some(Command::Phantom),
            "tcevidence" => Some(Command::TcEvidence),
            "compare-req" => Some(Command::CompareReq),
            "crosscheck" => Some(Command::Crosscheck),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Resolve => "resolve",
            Command::Hk => "hk",
            Command::Tor => "tor",
            Command::Verdict => "verdict",
            Command::Phantom => "phantom",
            Command::TcEvidence => "tcevidence",
            Command::CompareReq => "compare-req",
            Command::Crosscheck => "crosscheck",
        }
    }
}

#[derive(Debug, Clone)]
pub struct JobSpec {
    pub descriptor: Arc<RingDescriptor>,
    pub ideal: Vec<Polynomial>,
    pub equidimensional: bool,
    pub command: Command,
    pub emax: Option<u32>,
    pub spots: Option<Vec<usize>>,
    pub length: Option<usize>,
    pub tol: Option<String>,
    pub c: Option<Polynomial>,
    pub req_ideal: Option<Vec<Polynomial>>,
    pub n_ideal: Option<Vec<Polynomial>>,
    pub w_ideal: Option<Vec<Polynomial>>,
    pub csv: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl JobSpec {
    /// Canonical re-emission of the job; parsing it back is stable.
    pub fn canonical_text(&self) -> String {
        let d = &self.descriptor;
        let mut s = String::new();
        s.push_str("[ring]\n");
        s.push_str(&format!("p = {}\n", d.p));
        s.push_str(&format!("vars = {}\n", d.names.join(", ")));
        s.push_str(&format!(
            "weights = {}\n",
            d.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")
        ));
        s.push_str(&format!("order = {}\n", d.order.name()));
        s.push_str(&format!(
            "ideal = {}\n",
            self.ideal.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
        ));
        if self.equidimensional {
            s.push_str("equidimensional = true\n");
        }
        s.push_str("\n[job]\n");
        s.push_str(&format!("command = {}\n", self.command.name()));
        if let Some(e) = self.emax {
            s.push_str(&format!("emax = {e}\n"));
        }
        if let Some(sp) = &self.spots {
            s.push_str(&format!(
                "spots = {}\n",
                sp.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
            ));
        }
        if let Some(l) = self.length {
            s.push_str(&format!("length = {l}\n"));
        }
        if let Some(t) = &self.tol {
            s.push_str(&format!("tol = {t}\n"));
        }
        if let Some(c) = &self.c {
            s.push_str(&format!("c = {c}\n"));
        }
        let idlist = |v: &Option<Vec<Polynomial>>| {
            v.as_ref().map(|gens| {
                gens.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
            })
        };
        if let Some(t) = idlist(&self.req_ideal) {
            s.push_str(&format!("req_ideal = {t}\n"));
        }
        if let Some(t) = idlist(&self.n_ideal) {
            s.push_str(&format!("N = {t}\n"));
        }
        if let Some(t) = idlist(&self.w_ideal) {
            s.push_str(&format!("W = {t}\n"));
        }
        if let Some(p) = &self.csv {
            s.push_str(&format!("csv = {}\n", p.display()));
        }
        if let Some(p) = &self.out {
            s.push_str(&format!("out = {}\n", p.display()));
        }
        s
    }

    /// Canonical text of the computational input only: output paths do not
    /// change what is computed, so they stay out of the input hash.
    pub fn input_hash_text(&self) -> String {
        let mut stripped = self.clone();
        stripped.csv = None;
        stripped.out = None;
        stripped.canonical_text()
    }
}

struct RawEntry {
    key: String,
    value: String,
    line: usize,
    value_col: usize,
}

fn err_at(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

pub fn parse_jobspec(text: &str) -> Result<JobSpec> {
    let mut ring_entries: Vec<RawEntry> = Vec::new();
    let mut job_entries: Vec<RawEntry> = Vec::new();
    let mut section: Option<&str> = None;
    for (ln0, raw_line) in text.lines().enumerate() {
        let line_no = ln0 + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('[') {
            match trimmed {
                "[ring]" => section = Some("ring"),
                "[job]" => section = Some("job"),
                other => {
                    return Err(err_at(
                        line_no,
                        line.find('[').unwrap() + 1,
                        format!("unknown section '{other}' (expected [ring] or [job])"),
                    ))
                }
            }
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(err_at(line_no, 1, format!("expected 'key = value', got '{trimmed}'")));
        };
        let key = line[..eq].trim().to_string();
        let value_col = eq + 2 + line[eq + 1..].len() - line[eq + 1..].trim_start().len();
        let value = line[eq + 1..].trim().to_string();
        let entry = RawEntry { key, value, line: line_no, value_col };
        match section {
            Some("ring") => ring_entries.push(entry),
            Some("job") => job_entries.push(entry),
            _ => {
                return Err(err_at(
                    line_no,
                    1,
                    "key outside any section; start with [ring]".to_string(),
                ))
            }
        }
    }

    // [ring]
    let mut p: Option<(u64, usize, usize)> = None;
    let mut vars: Option<(Vec<String>, usize, usize)> = None;
    let mut weights: Option<(Vec<u64>, usize, usize)> = None;
    let mut order: Option<(MonomialOrder, usize, usize)> = None;
    let mut ideal_raw: Option<RawEntry> = None;
    let mut equidimensional = false;
    for e in ring_entries {
        match e.key.as_str() {
            "p" => {
                let v: u64 = e
                    .value
                    .parse()
                    .map_err(|_| err_at(e.line, e.value_col, "p must be an integer"))?;
                p = Some((v, e.line, e.value_col));
            }
            "vars" => {
                let names: Vec<String> =
                    e.value.split(',').map(|s| s.trim().to_string()).collect();
                vars = Some((names, e.line, e.value_col));
            }
            "weights" => {
                let mut ws = Vec::new();
                for part in e.value.split(',') {
                    let w: u64 = part.trim().parse().map_err(|_| {
                        err_at(e.line, e.value_col, "weights must be positive integers")
                    })?;
                    ws.push(w);
                }
                weights = Some((ws, e.line, e.value_col));
            }
            "order" => {
                let o = MonomialOrder::parse(&e.value)
                    .map_err(|err| err_at(e.line, e.value_col, err.to_string()))?;
                order = Some((o, e.line, e.value_col));
            }
            "ideal" => ideal_raw = Some(e),
            "equidimensional" => match e.value.as_str() {
                "true" => equidimensional = true,
                "false" => equidimensional = false,
                _ => {
                    return Err(err_at(
                        e.line,
                        e.value_col,
                        "equidimensional must be true or false",
                    ))
                }
            },
            other => {
                return Err(err_at(e.line, 1, format!("unknown [ring] key '{other}'")))
            }
        }
    }
    let (p, pl, pc) = p.ok_or_else(|| err_at(1, 1, "missing required key 'p' in [ring]"))?;
    let (names, _, _) =
        vars.ok_or_else(|| err_at(1, 1, "missing required key 'vars' in [ring]"))?;
    let descriptor = RingDescriptor::new(
        p,
        names,
        weights.map(|(w, _, _)| w),
        order.map(|(o, _, _)| o).unwrap_or(MonomialOrder::Grevlex),
    )
    .map_err(|e| err_at(pl, pc, e.to_string()))?;

    let parse_poly_list = |entry: &RawEntry| -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        let mut col = entry.value_col;
        for part in entry.value.split(',') {
            let lead_ws = part.len() - part.trim_start().len();
            let piece = part.trim();
            if !piece.is_empty() {
                let f =
                    parse_polynomial_at(&descriptor, piece, entry.line - 1, col + lead_ws - 1)?;
                if !f.is_zero() {
                    out.push(f);
                }
            }
            col += part.len() + 1;
        }
        Ok(out)
    };

    let ideal = match &ideal_raw {
        Some(e) => parse_poly_list(e)?,
        None => Vec::new(),
    };

    // [job]
    let mut command: Option<Command> = None;
    let mut emax = None;
    let mut spots = None;
    let mut length = None;
    let mut tol: Option<String> = None;
    let mut c = None;
    let mut req_ideal = None;
    let mut n_ideal = None;
    let mut w_ideal = None;
    let mut csv = None;
    let mut out_path = None;
    for e in job_entries {
        match e.key.as_str() {
            "command" => {
                command = Some(Command::parse(&e.value).ok_or_else(|| {
                    err_at(e.line, e.value_col, format!("unknown command '{}'", e.value))
                })?)
            }
            "emax" => {
                emax = Some(e.value.parse::<u32>().map_err(|_| {
                    err_at(e.line, e.value_col, "emax must be a non-negative integer")
                })?)
            }
            "spot" | "spots" => {
                let mut sp = Vec::new();
                for part in e.value.split(',') {
                    sp.push(part.trim().parse::<usize>().map_err(|_| {
                        err_at(e.line, e.value_col, "spots must be non-negative integers")
                    })?);
                }
                spots = Some(sp);
            }
            "length" => {
                length = Some(e.value.parse::<usize>().map_err(|_| {
                    err_at(e.line, e.value_col, "length must be a positive integer")
                })?)
            }
            "tol" => {
                crate::asymptotics::rational_from_decimal(&e.value)
                    .map_err(|err| err_at(e.line, e.value_col, err.to_string()))?;
                tol = Some(e.value.clone());
            }
            "c" => {
                c = Some(parse_polynomial_at(
                    &descriptor,
                    &e.value,
                    e.line - 1,
                    e.value_col - 1,
                )?)
            }
            "req_ideal" => req_ideal = Some(parse_poly_list(&e)?),
            "N" => n_ideal = Some(parse_poly_list(&e)?),
            "W" => w_ideal = Some(parse_poly_list(&e)?),
            "csv" => csv = Some(PathBuf::from(&e.value)),
            "out" => out_path = Some(PathBuf::from(&e.value)),
            other => {
                return Err(err_at(e.line, 1, format!("unknown [job] key '{other}'")))
            }
        }
    }
    let command =
        command.ok_or_else(|| err_at(1, 1, "missing required key 'command' in [job]"))?;

    Ok(JobSpec {
        descriptor,
        ideal,
        equidimensional,
        command,
        emax,
        spots,
        length,
        tol,
        c,
        req_ideal,
        n_ideal,
        w_ideal,
        csv,
        out: out_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL_HK: &str = "\
[ring]
p = 5
vars = x, y

[job]
command = hk
emax = 3
";

    #[test]
    fn minimal_job_gets_defaults() {
        let job = parse_jobspec(MINIMAL_HK).unwrap();
        assert_eq!(job.descriptor.p, 5);
        assert_eq!(job.descriptor.weights, vec![1, 1]);
        assert_eq!(job.descriptor.order, MonomialOrder::Grevlex);
        assert_eq!(job.command, Command::Hk);
        assert_eq!(job.emax, Some(3));
        assert!(job.ideal.is_empty());
    }

    #[test]
    fn nonprime_p_rejected() {
        let text = MINIMAL_HK.replace("p = 5", "p = 4");
        let e = parse_jobspec(&text).unwrap_err();
        assert!(e.to_string().contains("prime"), "{e}");
    }

    #[test]
    fn undeclared_variable_named() {
        let text = "\
[ring]
p = 5
vars = x, y
ideal = x*w

[job]
command = hk
";
        let e = parse_jobspec(text).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("'w'"), "{msg}");
        assert!(msg.contains("line 4"), "{msg}");
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = format!("{MINIMAL_HK}frobnicate = 7\n");
        let e = parse_jobspec(&text).unwrap_err();
        assert!(e.to_string().contains("frobnicate"), "{e}");
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let text = "\
[ring]
p = 5
vars = x, y
ideal = x*y, 0

[job]
command = verdict
spots = 1, 2
emax = 3
length = 4
tol = 0.01
";
        let job = parse_jobspec(text).unwrap();
        let canon = job.canonical_text();
        let job2 = parse_jobspec(&canon).unwrap();
        assert_eq!(canon, job2.canonical_text());
    }

    #[test]
    fn full_job_round_trip() {
        let text = "\
[ring]
p = 7
vars = x, y, z
weights = 1, 1, 1
order = grevlex
ideal = x^3 + y^3 + z^3

[job]
command = tcevidence
emax = 2
N = x, y
W = x, y, z^2
tol = 0.05
";
        let job = parse_jobspec(text).unwrap();
        assert_eq!(job.n_ideal.as_ref().unwrap().len(), 2);
        assert_eq!(job.w_ideal.as_ref().unwrap().len(), 3);
        let again = parse_jobspec(&job.canonical_text()).unwrap();
        assert_eq!(again.canonical_text(), job.canonical_text());
    }
}
