//! Question-order polls (Moore, 2002) and the effect arithmetic used to
//! classify them.
//!
//! Probabilities are fractions in `[0, 1]`. Each [`PollPair`] holds the two
//! orderings of one question pair. The first-listed ordering asks question
//! `A` first.

use std::collections::HashMap;
use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One ordering of a question pair as fielded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Experiment {
    pub pair_name: String,
    pub ordering_label: String,
    /// Observed probability of the answer to the first question asked.
    pub p_first: f64,
    /// Observed probability of the answer to the second question asked.
    pub p_second: f64,
    pub n_respondents: Option<u32>,
}

impl Experiment {
    pub fn new(
        pair_name: impl Into<String>,
        ordering_label: impl Into<String>,
        p_first: f64,
        p_second: f64,
        n_respondents: Option<u32>,
    ) -> Result<Self> {
        for (name, p) in [("p_first", p_first), ("p_second", p_second)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::OutOfRange { name, value: p });
            }
        }
        Ok(Self {
            pair_name: pair_name.into(),
            ordering_label: ordering_label.into(),
            p_first,
            p_second,
            n_respondents,
        })
    }

    /// Within-ordering change `p_second - p_first`.
    pub fn effect(&self) -> f64 {
        micro_delta(self.p_second, self.p_first)
    }
}

/// The two orderings of one question pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PollPair {
    pub first: Experiment,
    pub second: Experiment,
}

impl PollPair {
    pub fn name(&self) -> &str {
        &self.first.pair_name
    }

    pub fn orderings(&self) -> [&Experiment; 2] {
        [&self.first, &self.second]
    }
}

// Subtraction on a 1e-6 lattice so two-decimal inputs give two-decimal deltas
// that compare equal to their literals (0.57 - 0.50 == 0.07).
fn micro_delta(a: f64, b: f64) -> f64 {
    ((a * 1e6).round() - (b * 1e6).round()) / 1e6
}

fn exp(pair: &str, label: &str, p1: f64, p2: f64, n: u32) -> Experiment {
    Experiment {
        pair_name: pair.to_string(),
        ordering_label: label.to_string(),
        p_first: p1,
        p_second: p2,
        n_respondents: Some(n),
    }
}

/// The four published polls, as fielded.
pub fn builtin_polls() -> Vec<PollPair> {
    vec![
        PollPair {
            first: exp("Clinton/Gore", "Clinton-First", 0.50, 0.57, 1002),
            second: exp("Clinton/Gore", "Gore-First", 0.68, 0.60, 1002),
        },
        PollPair {
            first: exp("Gingrich/Dole", "Gingrich-First", 0.41, 0.33, 1015),
            second: exp("Gingrich/Dole", "Dole-First", 0.60, 0.64, 1015),
        },
        PollPair {
            first: exp("White/Black", "White People First", 0.41, 0.53, 1004),
            second: exp("White/Black", "Black People First", 0.46, 0.56, 1004),
        },
        PollPair {
            first: exp("Rose/Jackson", "Peter Rose First", 0.64, 0.52, 1061),
            second: exp(
                "Rose/Jackson",
                "Shoeless Joe Jackson First",
                0.45,
                0.33,
                1061,
            ),
        },
    ]
}

/// The `(first answer, second answer)` targets the published rotation fits
/// were run against.
///
/// These equal [`builtin_polls`] except for the racial-hostility pair. The
/// published fit used `0.41 -> 0.46` for the white-first ordering and
/// `0.53 -> 0.56` for the black-first one, while the poll table reports
/// `0.41 -> 0.53` and `0.46 -> 0.56`.
pub fn builtin_fit_targets() -> Vec<PollPair> {
    let mut polls = builtin_polls();
    let pair = &mut polls[2];
    pair.first.p_second = 0.46;
    pair.second.p_first = 0.53;
    polls
}

/// Finds an ordering by its label across all pairs.
pub fn lookup<'a>(polls: &'a [PollPair], ordering_label: &str) -> Option<&'a Experiment> {
    polls
        .iter()
        .flat_map(|p| p.orderings())
        .find(|e| e.ordering_label == ordering_label)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EffectType {
    /// `(+, -)`
    Assimilation,
    /// `(-, +)`
    Contrast,
    /// `(+, +)`
    Additive,
    /// `(-, -)`
    Subtractive,
    /// At least one ordering shows no change.
    Unclassified,
}

impl EffectType {
    pub fn from_effects(first: f64, second: f64) -> Self {
        use std::cmp::Ordering::*;
        match (first.partial_cmp(&0.0), second.partial_cmp(&0.0)) {
            (Some(Greater), Some(Less)) => EffectType::Assimilation,
            (Some(Less), Some(Greater)) => EffectType::Contrast,
            (Some(Greater), Some(Greater)) => EffectType::Additive,
            (Some(Less), Some(Less)) => EffectType::Subtractive,
            _ => EffectType::Unclassified,
        }
    }
}

impl fmt::Display for EffectType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectReport {
    pub pair_name: String,
    /// Effect `p_second - p_first` for the first and second ordering.
    pub effects: [f64; 2],
    /// `|p_first(A first) - p_first(B first)|`.
    pub noncomparative_gap: f64,
    /// `|p_second(A first) - p_second(B first)|`.
    pub comparative_gap: f64,
    pub classification: EffectType,
}

pub fn effect_report(pair: &PollPair) -> EffectReport {
    let effects = [pair.first.effect(), pair.second.effect()];
    EffectReport {
        pair_name: pair.name().to_string(),
        effects,
        noncomparative_gap: micro_delta(pair.first.p_first, pair.second.p_first).abs(),
        comparative_gap: micro_delta(pair.first.p_second, pair.second.p_second).abs(),
        classification: EffectType::from_effects(effects[0], effects[1]),
    }
}

pub const POLL_HEADER: [&str; 5] = [
    "pair_name",
    "ordering_label",
    "p_first",
    "p_second",
    "n_respondents",
];

// Columns of the fit table that map onto an experiment.
const FIT_COLUMNS: [&str; 4] = ["pair", "ordering", "predicted_p1", "predicted_p2"];

/// Reads poll pairs from CSV.
///
/// The poll schema `pair_name,ordering_label,p_first,p_second,n_respondents`
/// is expected. A fit table (`pair,ordering,...,predicted_p1,predicted_p2,...`)
/// is also accepted and read as predicted experiments. Rows are paired by
/// name in order of appearance; every name must occur exactly twice.
pub fn load_polls<R: Read>(source: R) -> Result<Vec<PollPair>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader.headers().map_err(|e| csv_error(1, e))?.clone();
    if headers.is_empty() {
        return Ok(Vec::new());
    }

    let column = |name: &str| headers.iter().position(|h| h == name);
    let columns: [usize; 4] = if let [Some(a), Some(b), Some(c), Some(d)] = [
        POLL_HEADER[0],
        POLL_HEADER[1],
        POLL_HEADER[2],
        POLL_HEADER[3],
    ]
    .map(&column)
    {
        [a, b, c, d]
    } else if let [Some(a), Some(b), Some(c), Some(d)] = FIT_COLUMNS.map(&column) {
        [a, b, c, d]
    } else {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "unrecognised header `{}`; expected `{}`",
                headers.iter().collect::<Vec<_>>().join(","),
                POLL_HEADER.join(",")
            ),
        });
    };
    let n_column = column("n_respondents");

    let mut rows: Vec<(u64, Experiment)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            csv_error(line, e)
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| record.get(i).unwrap_or("");
        let prob = |name: &str, i: usize| -> Result<f64> {
            let raw = field(i);
            let value: f64 = raw.parse().map_err(|_| Error::Parse {
                line,
                message: format!("{name} `{raw}` is not a number"),
            })?;
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::Parse {
                    line,
                    message: format!("{name} = {value} is outside [0, 1]"),
                });
            }
            Ok(value)
        };
        let pair_name = field(columns[0]);
        if pair_name.is_empty() {
            return Err(Error::Parse {
                line,
                message: "empty pair name".into(),
            });
        }
        let n_respondents = match n_column.map(field) {
            None | Some("") => None,
            Some(raw) => Some(raw.parse::<u32>().map_err(|_| Error::Parse {
                line,
                message: format!("n_respondents `{raw}` is not a count"),
            })?),
        };
        rows.push((
            line,
            Experiment {
                pair_name: pair_name.to_string(),
                ordering_label: field(columns[1]).to_string(),
                p_first: prob("p_first", columns[2])?,
                p_second: prob("p_second", columns[3])?,
                n_respondents,
            },
        ));
    }
    pair_rows(rows)
}

fn pair_rows(rows: Vec<(u64, Experiment)>) -> Result<Vec<PollPair>> {
    let mut order: Vec<String> = Vec::new();
    let mut groups: HashMap<String, Vec<(u64, Experiment)>> = HashMap::new();
    for (line, e) in rows {
        let group = groups.entry(e.pair_name.clone()).or_insert_with(|| {
            order.push(e.pair_name.clone());
            Vec::new()
        });
        if group.len() == 2 {
            return Err(Error::Parse {
                line,
                message: format!("pair `{}` has more than two orderings", e.pair_name),
            });
        }
        group.push((line, e));
    }
    order
        .into_iter()
        .map(|name| {
            let mut group = groups.remove(&name).unwrap_or_default();
            if group.len() != 2 {
                let line = group.first().map_or(0, |(l, _)| *l);
                return Err(Error::Parse {
                    line,
                    message: format!("pair `{name}` has only one ordering"),
                });
            }
            let (_, second) = group.pop().unwrap();
            let (_, first) = group.pop().unwrap();
            Ok(PollPair { first, second })
        })
        .collect()
}

fn csv_error(line: u64, e: csv::Error) -> Error {
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

/// Writes poll pairs in the poll CSV schema, probabilities to 6 decimals.
pub fn write_polls<W: Write>(sink: W, polls: &[PollPair]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(POLL_HEADER)?;
    for e in polls.iter().flat_map(|p| p.orderings()) {
        w.write_record([
            e.pair_name.clone(),
            e.ordering_label.clone(),
            format!("{:.6}", e.p_first),
            format!("{:.6}", e.p_second),
            e.n_respondents.map(|n| n.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()
}
