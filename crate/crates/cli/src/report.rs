use std::fmt;
use std::time::Instant;

use orbitcalc_core::{
    needs_label, parse_partition, Algebra, Error, NilpotentOrbit, Partition, VeryEvenLabel, ENGINE_VERSION,
};
use serde::Serialize;

/// Environment variable capping the natural dimension of any sweep.
pub const MAX_M_VAR: &str = "ORBITCALC_MAX_M";
pub const DEFAULT_MAX_M: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => crate::EXIT_INPUT,
            Failure::Internal(_) => crate::EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(msg) | Failure::Internal(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

pub(crate) fn max_m_from_env() -> Result<usize, Failure> {
    match std::env::var(MAX_M_VAR) {
        Err(_) => Ok(DEFAULT_MAX_M),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("{MAX_M_VAR}={v:?} is not a non-negative integer"))),
    }
}

/// What a command wrote and the exit code it wants.
pub(crate) struct Outcome {
    pub text: String,
    pub code: i32,
}

pub(crate) struct Context {
    pub echo: String,
    pub json: bool,
    pub timing: bool,
    pub max_m: usize,
    pub warnings: Vec<String>,
    start: Instant,
}

/// JSON envelope shared by every command. Field order is part of the schema.
#[derive(Serialize)]
struct Report<'a, I: Serialize, R: Serialize> {
    command: &'a str,
    algebra: Option<String>,
    inputs: I,
    result: R,
    engine_version: &'static str,
    elapsed_ms: Option<u128>,
}

impl Context {
    pub fn new(echo: String, json: bool, timing: bool, max_m: usize) -> Self {
        Context {
            echo,
            json,
            timing,
            max_m,
            warnings: Vec::new(),
            start: Instant::now(),
        }
    }

    fn elapsed_ms(&self) -> Option<u128> {
        self.timing.then(|| self.start.elapsed().as_millis())
    }

    /// Renders either the JSON report or `text`, with exit code 0.
    pub fn emit<I: Serialize, R: Serialize>(
        &self,
        algebra: Option<Algebra>,
        inputs: I,
        result: R,
        text: String,
    ) -> Result<Outcome, Failure> {
        self.emit_with_code(algebra, inputs, result, text, crate::EXIT_OK)
    }

    pub fn emit_with_code<I: Serialize, R: Serialize>(
        &self,
        algebra: Option<Algebra>,
        inputs: I,
        result: R,
        mut text: String,
        code: i32,
    ) -> Result<Outcome, Failure> {
        if self.json {
            let report = Report {
                command: &self.echo,
                algebra: algebra.map(|a| a.to_string()),
                inputs,
                result,
                engine_version: ENGINE_VERSION,
                elapsed_ms: self.elapsed_ms(),
            };
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| Failure::Internal(format!("cannot serialize report: {e}")))?;
            s.push('\n');
            return Ok(Outcome { text: s, code });
        }
        if let Some(ms) = self.elapsed_ms() {
            text.push_str(&format!("elapsed: {ms} ms\n"));
        }
        Ok(Outcome { text, code })
    }

    /// Raw output (DOT) that bypasses the report envelope.
    pub fn raw(&self, text: String) -> Outcome {
        Outcome {
            text,
            code: crate::EXIT_OK,
        }
    }

    pub fn algebra(&self, text: &str) -> Result<Algebra, Failure> {
        let algebra: Algebra = text.parse()?;
        self.within_cap(algebra.natural_dim())?;
        Ok(algebra)
    }

    pub fn within_cap(&self, m: usize) -> Result<(), Failure> {
        if m > self.max_m {
            return Err(Failure::Input(format!(
                "natural dimension {m} exceeds the cap {} (set {MAX_M_VAR} to raise it)",
                self.max_m
            )));
        }
        Ok(())
    }

    pub fn partition(&mut self, text: &str) -> Result<Partition, Failure> {
        let parsed = parse_partition(text)?;
        if parsed.reordered {
            self.warnings
                .push(format!("partition {text:?} reordered to {}", parsed.partition.bracketed()));
        }
        Ok(parsed.partition)
    }

    /// Parses `PARTITION[/I|/II]` as an orbit of `algebra`. A very even type D
    /// partition without a label defaults to label I.
    pub fn orbit(&mut self, algebra: Algebra, text: &str) -> Result<NilpotentOrbit, Failure> {
        let (body, label) = match text.rsplit_once('/') {
            Some((body, tag)) => {
                let label = match tag.trim().to_ascii_uppercase().as_str() {
                    "I" => VeryEvenLabel::I,
                    "II" => VeryEvenLabel::II,
                    _ => return Err(Failure::Input(format!("unknown orbit label {tag:?}; expected I or II"))),
                };
                (body, Some(label))
            }
            None => (text, None),
        };
        let partition = self.partition(body)?;
        let label = match label {
            None if needs_label(algebra, &partition) => {
                self.warnings.push(format!(
                    "very even {} in {algebra} is two orbits; using label I",
                    partition.bracketed()
                ));
                Some(VeryEvenLabel::I)
            }
            other => other,
        };
        Ok(NilpotentOrbit::new(algebra, partition, label)?)
    }
}

pub(crate) fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned table with a header row.
pub(crate) fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}
