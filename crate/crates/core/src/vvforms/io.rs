//! Line-oriented files for vector-valued q-expansions.
//!
//! ```text
//! vvform v1 N=<int> weight=<rat> dual=<0|1> [prec=<rat>]
//! <exponent> <component> <coefficient>
//! ```
//!
//! Without `prec` the listed terms are taken as the whole expansion.

use std::path::Path;

use crate::error::{Error, Result};
use crate::scalars::rat::{parse_rat, Rat};

use super::{QSeries, VVQExpansion};

#[derive(Clone, Debug, PartialEq)]
pub struct VVFormFile {
    pub weight: Rat,
    pub form: VVQExpansion<Rat>,
    pub exact: bool,
}

impl VVFormFile {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_impl(text, true)
    }

    /// Parses without checking exponents against the representation, for
    /// coefficient tables indexed outside the q-expansion grid.
    pub fn parse_unchecked(text: &str) -> Result<Self> {
        Self::parse_impl(text, false)
    }

    fn parse_impl(text: &str, grid: bool) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty form file".into() })?;
        let herr = |msg: String| Error::Parse { line: hl + 1, msg };
        let mut parts = header.split_whitespace();
        if parts.next() != Some("vvform") || parts.next() != Some("v1") {
            return Err(herr("expected header 'vvform v1'".into()));
        }
        let (mut level, mut weight, mut dual, mut prec) = (None, None, None, None);
        for p in parts {
            let (key, val) = p.split_once('=').ok_or_else(|| herr(format!("bad header field '{p}'")))?;
            let bad = || herr(format!("bad value in '{p}'"));
            match key {
                "N" => level = Some(val.parse::<u64>().map_err(|_| bad())?),
                "weight" => weight = Some(parse_rat(val).ok_or_else(bad)?.0),
                "dual" => {
                    dual = Some(match val {
                        "0" => false,
                        "1" => true,
                        _ => return Err(bad()),
                    })
                }
                "prec" => prec = Some(parse_rat(val).ok_or_else(bad)?.0),
                _ => return Err(herr(format!("unknown header field '{key}'"))),
            }
        }
        let level = level.ok_or_else(|| herr("header lacks N".into()))?;
        let weight = weight.ok_or_else(|| herr("header lacks weight".into()))?;
        let dual = dual.ok_or_else(|| herr("header lacks dual".into()))?;
        let mut series = QSeries::new(prec);
        let mut exact = true;
        for (i, line) in lines {
            let perr = |msg: String| Error::Parse { line: i + 1, msg };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(perr("expected 'exponent component coefficient'".into()));
            }
            let (e, e_exact) = parse_rat(f[0]).ok_or_else(|| perr(format!("bad exponent '{}'", f[0])))?;
            if !e_exact {
                return Err(perr("exponents must be exact rationals".into()));
            }
            let mu: usize = f[1].parse().map_err(|_| perr(format!("bad component '{}'", f[1])))?;
            let (c, c_exact) = parse_rat(f[2]).ok_or_else(|| perr(format!("bad coefficient '{}'", f[2])))?;
            exact &= c_exact;
            if let Some(p) = series.prec() {
                if &e >= p {
                    return Err(perr(format!("exponent {e} is at or beyond prec {p}")));
                }
            }
            if series.terms().contains_key(&(e.clone(), mu)) {
                return Err(perr(format!("duplicate term ({e}, {mu})")));
            }
            series.add_term(e, mu, c);
        }
        let form = VVQExpansion { level, dual, series };
        if grid {
            form.check_grid()?;
        } else if let Some(mu) = form.series.terms().keys().map(|k| k.1).find(|&mu| mu as u64 >= 2 * level) {
            return Err(Error::Domain(format!("component {mu} outside Z/{}Z", 2 * level)));
        }
        Ok(VVFormFile { weight, form, exact })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read(path)?)
    }

    pub fn load_unchecked(path: &Path) -> Result<Self> {
        Self::parse_unchecked(&read(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "vvform v1 N={} weight={} dual={}",
            self.form.level,
            self.weight,
            u8::from(self.form.dual)
        );
        if let Some(p) = self.form.series.prec() {
            s.push_str(&format!(" prec={p}"));
        }
        s.push('\n');
        for (e, mu, c) in self.form.series.iter() {
            s.push_str(&format!("{e} {mu} {c}\n"));
        }
        s
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
