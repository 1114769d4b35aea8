//! Tor dimension tables with per-entry provenance.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::resolution::ell;

use super::complex::{ReducedComplex, BOUNDARY_DIM};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Computed from ranks of constructed differentials.
    Exact,
    /// Bounded from cell counts and the last constructed differential.
    Interval,
    /// Below ℓ_N(k), where Tor always vanishes; computed anyway where possible.
    HardZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TorEntry {
    pub lo: usize,
    pub hi: usize,
    pub provenance: Provenance,
}

impl TorEntry {
    pub fn exact(&self) -> Option<usize> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

impl fmt::Display for TorEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorTable {
    pub kmax: usize,
    pub dmax: u32,
    pub n: Option<u32>,
    pub entries: BTreeMap<(usize, u32), TorEntry>,
    /// Hard-zero positions where a computed lower bound was positive.
    pub violations: Vec<(usize, u32)>,
}

impl TorTable {
    pub fn get(&self, k: usize, i: u32) -> TorEntry {
        self.entries[&(k, i)]
    }

    /// Exact value, panicking on intervals; for tests and fixtures.
    pub fn value(&self, k: usize, i: u32) -> usize {
        self.get(k, i).exact().unwrap_or_else(|| panic!("Tor_{k},({i}) is only bounded"))
    }

    /// Positions with a positive lower bound.
    pub fn nonzero(&self) -> Vec<((usize, u32), TorEntry)> {
        self.entries.iter().filter(|(_, e)| e.lo > 0).map(|(k, e)| (*k, *e)).collect()
    }

    pub fn render(&self) -> String {
        let mut s = String::from("k\\i");
        for i in 0..=self.dmax {
            s.push_str(&format!("\t{i}"));
        }
        s.push('\n');
        for k in 0..=self.kmax {
            s.push_str(&k.to_string());
            for i in 0..=self.dmax {
                s.push_str(&format!("\t{}", self.get(k, i)));
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Serialize)]
struct TorCell {
    k: usize,
    i: u32,
    lo: usize,
    hi: usize,
    provenance: Provenance,
}

#[derive(Serialize)]
struct TorTableRepr {
    kmax: usize,
    dmax: u32,
    n: Option<u32>,
    entries: Vec<TorCell>,
    violations: Vec<(usize, u32)>,
}

impl Serialize for TorTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TorTableRepr {
            kmax: self.kmax,
            dmax: self.dmax,
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(&(k, i), e)| TorCell { k, i, lo: e.lo, hi: e.hi, provenance: e.provenance })
                .collect(),
            violations: self.violations.clone(),
        }
        .serialize(s)
    }
}

/// Tor_{k,(i)} for k ≤ `kmax`, i ≤ the complex's `dmax`.
///
/// Exact for k ≤ 3; for k = 4 the interval `[max(0, hi − #5-cells), hi]`
/// with `hi = dim ker δ̄₃`; above, `[0, #k-cells]`.
pub fn tor_table(cx: &ReducedComplex, kmax: usize) -> Result<TorTable> {
    if kmax > cx.top_dim() {
        return Err(crate::error::Error::Invalid(format!("cells are enumerated only up to dimension {}", cx.top_dim())));
    }
    let mut entries = BTreeMap::new();
    let mut violations = Vec::new();
    for k in 0..=kmax {
        for i in 0..=cx.dmax {
            let ck = cx.count(k, i);
            let (lo, hi, exactish) = if k < BOUNDARY_DIM {
                let v = ck - cx.rank(k, i)? - cx.rank(k + 1, i)?;
                (v, v, true)
            } else if k == BOUNDARY_DIM {
                let hi = ck - cx.rank(k, i)?;
                let lo = hi.saturating_sub(cx.count(k + 1, i));
                (lo, hi, lo == hi)
            } else {
                (0, ck, ck == 0)
            };
            let hard = cx.n.is_some_and(|n| i < ell(n, k));
            if hard && lo > 0 {
                violations.push((k, i));
            }
            let provenance = if hard {
                Provenance::HardZero
            } else if exactish {
                Provenance::Exact
            } else {
                Provenance::Interval
            };
            entries.insert((k, i), TorEntry { lo, hi, provenance });
        }
    }
    Ok(TorTable { kmax, dmax: cx.dmax, n: cx.n, entries, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::build_complex;
    use crate::testkit::{convergent, PP, XY, XYZ};

    fn nonzero(t: &TorTable) -> Vec<(usize, u32, String)> {
        t.nonzero().into_iter().map(|((k, i), e)| (k, i, e.to_string())).collect()
    }

    #[test]
    fn xyz_table() {
        let cx = build_complex(&convergent(XYZ), 3, 6).unwrap();
        let t = tor_table(&cx, 3).unwrap();
        assert_eq!(nonzero(&t), vec![(0, 0, "1".into()), (1, 1, "3".into()), (2, 3, "1".into())]);
        assert!(t.entries.values().all(|e| e.exact().is_some()));
        assert!(t.violations.is_empty());
    }

    #[test]
    fn pp_table() {
        let mut cx = build_complex(&convergent(PP), 4, 5).unwrap();
        // The completed system mixes degrees 2 and 3; N comes from the input.
        assert_eq!(cx.n, None);
        cx.n = Some(2);
        let t = tor_table(&cx, 3).unwrap();
        assert_eq!(t.value(2, 2), 2);
        for (k, i) in [(2, 3), (3, 3), (3, 4)] {
            assert_eq!(t.value(k, i), 0);
            assert_eq!(t.get(k, i).provenance, Provenance::Exact);
        }
        assert_eq!(t.get(2, 1).provenance, Provenance::HardZero);
    }

    #[test]
    fn xy_table_and_intervals() {
        let cx = build_complex(&convergent(XY), 4, 6).unwrap();
        let t = tor_table(&cx, 4).unwrap();
        assert_eq!(t.value(3, 3), 1);
        assert_eq!(t.value(3, 4), 1);
        assert_eq!(t.get(4, 5).provenance, Provenance::Interval);
        assert_eq!(t.get(4, 5).to_string(), "[3,5]");
        assert!(tor_table(&cx, 9).is_err());
    }

    #[test]
    fn json_has_flat_entries() {
        let cx = build_complex(&convergent(XYZ), 3, 3).unwrap();
        let v = serde_json::to_value(tor_table(&cx, 3).unwrap()).unwrap();
        let e = &v["entries"][0];
        assert_eq!((e["k"].as_u64(), e["i"].as_u64(), e["provenance"].as_str()), (Some(0), Some(0), Some("exact")));
    }
}
