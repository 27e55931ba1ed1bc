//! Append-only JSON-lines result store keyed by canonical graph6.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::deck::CardKey;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::recon::{ReconValue, Reconstruction};

/// Environment variable naming the store file.
pub const STORE_ENV: &str = "RECONKIT_STORE";
pub const DEFAULT_STORE: &str = "reconkit-store.jsonl";

/// Which numbers to compute for a record.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Needs {
    pub ern: bool,
    pub dern: bool,
    pub adv_ern: bool,
    pub adv_dern: bool,
}

impl Needs {
    pub const ALL: Needs = Needs {
        ern: true,
        dern: true,
        adv_ern: true,
        adv_dern: true,
    };

    pub fn union(self, o: Needs) -> Needs {
        Needs {
            ern: self.ern || o.ern,
            dern: self.dern || o.dern,
            adv_ern: self.adv_ern || o.adv_ern,
            adv_dern: self.adv_dern || o.adv_dern,
        }
    }
}

/// One result row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    /// Canonical graph6; the record's identity.
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ern: Option<ReconValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dern: Option<ReconValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adv_ern: Option<ReconValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adv_dern: Option<ReconValue>,
    /// Witness of `dern` (or of `ern` when `dern` was not computed), one
    /// `mult×d×graph6` string per distinct card; `d` is `-` for plain
    /// edge-cards.
    #[serde(default)]
    pub witness: Vec<String>,
    #[serde(default)]
    pub elapsed_ms: u64,
}

impl Record {
    pub fn covers(&self, needs: Needs) -> bool {
        (!needs.ern || self.ern.is_some())
            && (!needs.dern || self.dern.is_some())
            && (!needs.adv_ern || self.adv_ern.is_some())
            && (!needs.adv_dern || self.adv_dern.is_some())
    }

    pub fn graph(&self) -> Result<Graph> {
        crate::graph6::parse_graph6(&self.graph6)
    }

    /// Same content ignoring the timing field.
    pub fn same_result(&self, other: &Record) -> bool {
        let mut a = self.clone();
        a.elapsed_ms = other.elapsed_ms;
        a == *other
    }

    fn field(&self, name: &str) -> Option<ReconValue> {
        match name {
            "ern" => self.ern,
            "dern" => self.dern,
            "adv_ern" | "adv-ern" => self.adv_ern,
            "adv_dern" | "adv-dern" => self.adv_dern,
            "n" => Some(ReconValue::Finite(self.n)),
            "m" => Some(ReconValue::Finite(self.m)),
            _ => None,
        }
    }
}

pub fn format_witness(w: &[(CardKey, usize)]) -> Vec<String> {
    w.iter()
        .map(|(k, c)| match k.d {
            Some(d) => format!("{c}×{d}×{}", k.card),
            None => format!("{c}×-×{}", k.card),
        })
        .collect()
}

/// Computes the requested numbers for `g`.
pub fn compute_record(g: &Graph, needs: Needs) -> Result<Record> {
    let start = Instant::now();
    let mut rec = Record {
        graph6: canonical_form(g).as_str().to_string(),
        n: g.n(),
        m: g.m(),
        ern: None,
        dern: None,
        adv_ern: None,
        adv_dern: None,
        witness: Vec::new(),
        elapsed_ms: 0,
    };
    if needs.ern || needs.adv_ern {
        let r = Reconstruction::new(g, false)?;
        if needs.ern {
            let res = r.recon_number();
            rec.ern = Some(res.value);
            rec.witness = format_witness(&res.witness);
        }
        if needs.adv_ern {
            rec.adv_ern = Some(r.adv_recon_number().value);
        }
    }
    if needs.dern || needs.adv_dern {
        let r = Reconstruction::new(g, true)?;
        if needs.dern {
            let res = r.recon_number();
            rec.dern = Some(res.value);
            rec.witness = format_witness(&res.witness);
        }
        if needs.adv_dern {
            rec.adv_dern = Some(r.adv_recon_number().value);
        }
    }
    rec.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(rec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Ge,
    Le,
    Gt,
    Lt,
    Eq,
    Ne,
}

/// Conjunction of comparisons such as `dern>=3,n<=6`. Fields are `ern`,
/// `dern`, `adv_ern`, `adv_dern`, `n`, `m`; a value may be `indeterminate`.
/// A record lacking a named field never matches.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Filter {
    terms: Vec<(String, Op, ReconValue)>,
}

impl Filter {
    pub fn all() -> Filter {
        Filter::default()
    }

    pub fn parse(text: &str) -> Result<Filter> {
        let mut terms = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (at, op, len) = [
                (">=", Op::Ge),
                ("<=", Op::Le),
                ("!=", Op::Ne),
                ("==", Op::Eq),
                (">", Op::Gt),
                ("<", Op::Lt),
                ("=", Op::Eq),
            ]
            .iter()
            .find_map(|&(sym, op)| part.find(sym).map(|i| (i, op, sym.len())))
            .ok_or_else(|| Error::Filter(part.to_string()))?;
            let field = part[..at].trim().to_string();
            let raw = part[at + len..].trim();
            let value = if raw == "indeterminate" {
                ReconValue::Indeterminate
            } else {
                ReconValue::Finite(raw.parse().map_err(|_| Error::Filter(part.to_string()))?)
            };
            if !matches!(
                field.as_str(),
                "ern" | "dern" | "adv_ern" | "adv-ern" | "adv_dern" | "adv-dern" | "n" | "m"
            ) {
                return Err(Error::Filter(part.to_string()));
            }
            terms.push((field, op, value));
        }
        Ok(Filter { terms })
    }

    pub fn matches(&self, r: &Record) -> bool {
        self.terms.iter().all(|(f, op, v)| {
            r.field(f).is_some_and(|x| match op {
                Op::Ge => x >= *v,
                Op::Le => x <= *v,
                Op::Gt => x > *v,
                Op::Lt => x < *v,
                Op::Eq => x == *v,
                Op::Ne => x != *v,
            })
        })
    }
}

/// Result of reading a store.
#[derive(Clone, Debug, Default)]
pub struct Scan {
    /// Latest record per certificate, in order of first appearance.
    pub records: Vec<Record>,
    /// Lines whose certificate had already appeared.
    pub duplicates: usize,
    /// Lines that failed to parse and were skipped.
    pub corrupt: usize,
}

/// A line-delimited record file with a single writer.
#[derive(Debug)]
pub struct Store {
    path: PathBuf,
    seen: Option<HashSet<String>>,
}

impl Store {
    pub fn open(path: impl AsRef<Path>) -> Store {
        Store {
            path: path.as_ref().to_path_buf(),
            seen: None,
        }
    }

    /// Path from `RECONKIT_STORE`, else the default file name.
    pub fn from_env() -> Store {
        Store::open(std::env::var(STORE_ENV).unwrap_or_else(|_| DEFAULT_STORE.to_string()))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends one line. Returns `true` when the certificate was already
    /// present; the line is still written and later scans keep the newest.
    pub fn append(&mut self, rec: &Record) -> Result<bool> {
        if self.seen.is_none() {
            let scan = self.scan(&Filter::all())?;
            self.seen = Some(scan.records.into_iter().map(|r| r.graph6).collect());
        }
        let line = serde_json::to_string(rec).map_err(|e| Error::Io(e.to_string()))?;
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(f, "{line}")?;
        let seen = self.seen.as_mut().expect("loaded above");
        Ok(!seen.insert(rec.graph6.clone()))
    }

    pub fn scan(&self, filter: &Filter) -> Result<Scan> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Scan::default()),
            Err(e) => return Err(e.into()),
        };
        let mut slot: HashMap<String, usize> = HashMap::new();
        let mut records: Vec<Record> = Vec::new();
        let mut out = Scan::default();
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<Record>(&line) {
                Ok(r) => match slot.get(&r.graph6) {
                    Some(&i) => {
                        out.duplicates += 1;
                        records[i] = r;
                    }
                    None => {
                        slot.insert(r.graph6.clone(), records.len());
                        records.push(r);
                    }
                },
                Err(_) => {
                    out.corrupt += 1;
                }
            }
        }
        out.records = records.into_iter().filter(|r| filter.matches(r)).collect();
        Ok(out)
    }

    /// Latest record per certificate.
    pub fn index(&self) -> Result<BTreeMap<String, Record>> {
        Ok(self
            .scan(&Filter::all())?
            .records
            .into_iter()
            .map(|r| (r.graph6.clone(), r))
            .collect())
    }
}
