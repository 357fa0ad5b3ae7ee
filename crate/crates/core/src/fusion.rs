//! Fusion tables `N_{xy}^z = dim Mor(z, x ⊗ y)` and their ring axioms.

use crate::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionTable {
    n: usize,
    unit: usize,
    conj: Vec<usize>,
    dims: Vec<usize>,
    /// `mult[(x*n + y)*n + z]`
    mult: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FusionAudit {
    pub unit: Vec<(usize, usize)>,
    pub conjugation: Vec<(usize, usize, usize)>,
    pub frobenius: Vec<(usize, usize, usize)>,
    pub associativity: Vec<(usize, usize, usize, usize)>,
    pub dimension: Vec<(usize, usize)>,
    pub involution: Vec<usize>,
}

impl FusionAudit {
    pub fn is_clean(&self) -> bool {
        self.unit.is_empty()
            && self.conjugation.is_empty()
            && self.frobenius.is_empty()
            && self.associativity.is_empty()
            && self.dimension.is_empty()
            && self.involution.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.unit.len()
            + self.conjugation.len()
            + self.frobenius.len()
            + self.associativity.len()
            + self.dimension.len()
            + self.involution.len()
    }
}

impl FusionTable {
    /// Fill the table from `f(x, y, z) = N_{xy}^z`.
    pub fn build(
        dims: Vec<usize>,
        unit: usize,
        conj: Vec<usize>,
        f: impl Fn(usize, usize, usize) -> Result<usize> + Sync,
    ) -> Result<Self> {
        use rayon::prelude::*;
        let n = dims.len();
        if conj.len() != n || unit >= n {
            return Err(Error::InvalidTable("fusion table shape".into()));
        }
        let mult = (0..n * n * n)
            .into_par_iter()
            .map(|i| f(i / (n * n), (i / n) % n, i % n))
            .collect::<Result<Vec<_>>>()?;
        Ok(FusionTable {
            n,
            unit,
            conj,
            dims,
            mult,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn conj(&self, x: usize) -> usize {
        self.conj[x]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> usize {
        self.mult[(x * self.n + y) * self.n + z]
    }

    /// Triples `(x, y, z)` with `N_{xy}^z ≠ 0`.
    pub fn support(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n;
        (0..n * n * n)
            .filter(|&i| self.mult[i] != 0)
            .map(|i| (i / (n * n), (i / n) % n, i % n))
            .collect()
    }

    pub fn audit(&self) -> FusionAudit {
        let n = self.n;
        let mut a = FusionAudit::default();
        for x in 0..n {
            if self.conj[self.conj[x]] != x {
                a.involution.push(x);
            }
            for y in 0..n {
                let expect = usize::from(x == y);
                if self.get(x, self.unit, y) != expect || self.get(self.unit, x, y) != expect {
                    a.unit.push((x, y));
                }
                let total: usize = (0..n).map(|z| self.get(x, y, z) * self.dims[z]).sum();
                if total != self.dims[x] * self.dims[y] {
                    a.dimension.push((x, y));
                }
                for z in 0..n {
                    let m = self.get(x, y, z);
                    if m != self.get(self.conj[y], self.conj[x], self.conj[z]) {
                        a.conjugation.push((x, y, z));
                    }
                    if m != self.get(self.conj[x], z, y) {
                        a.frobenius.push((x, y, z));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for w in 0..n {
                    for v in 0..n {
                        let left: usize = (0..n).map(|z| self.get(x, y, z) * self.get(z, w, v)).sum();
                        let right: usize = (0..n).map(|z| self.get(y, w, z) * self.get(x, z, v)).sum();
                        if left != right {
                            a.associativity.push((x, y, w, v));
                        }
                    }
                }
            }
        }
        a
    }

    /// Rows `x,y,z,multiplicity` for the nonzero entries.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,y,z,multiplicity\n");
        for (x, y, z) in self.support() {
            s.push_str(&format!("{x},{y},{z},{}\n", self.get(x, y, z)));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .support()
            .into_iter()
            .map(|(x, y, z)| serde_json::json!([x, y, z, self.get(x, y, z)]))
            .collect();
        serde_json::json!({
            "classes": self.n,
            "unit": self.unit,
            "conjugate": self.conj,
            "dims": self.dims,
            "entries": entries,
        })
    }

    /// Entries where the two tables differ, as `(x, y, z, self, other)`.
    pub fn diff(&self, other: &FusionTable) -> Vec<(usize, usize, usize, usize, usize)> {
        let n = self.n.min(other.n);
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (a, b) = (self.get(x, y, z), other.get(x, y, z));
                    if a != b {
                        out.push((x, y, z, a, b));
                    }
                }
            }
        }
        out
    }
}
