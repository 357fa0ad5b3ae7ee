use super::{EnumerableGroup, GroupLaw};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// A nontrivial power `x_factor^exp` of a factor generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub factor: usize,
    pub exp: usize,
}

/// Reduced word: alternating syllables from different factors.
///
/// Ordered shortlex on syllables, so the identity is the least word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Syllable>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }
    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

const DEFAULT_GUARD: usize = 50_000_000;

/// Free product of finite cyclic groups `ℤ/n₁ ∗ ℤ/n₂ ∗ …`.
#[derive(Clone, Debug)]
pub struct FreeProduct {
    orders: Vec<usize>,
    guard: usize,
}

impl FreeProduct {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if let Some(index) = orders.iter().position(|&n| n < 2) {
            return Err(Error::FreeProductFactor { index });
        }
        Ok(FreeProduct {
            orders,
            guard: DEFAULT_GUARD,
        })
    }

    pub fn with_guard(mut self, guard: usize) -> Self {
        self.guard = guard;
        self
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn generator(&self, factor: usize) -> Word {
        Word(vec![Syllable { factor, exp: 1 }])
    }

    fn cost(&self, s: &Syllable) -> usize {
        let n = self.orders[s.factor];
        s.exp.min(n - s.exp)
    }

    /// Reduce an arbitrary syllable sequence (exponents taken mod the factor order).
    pub fn reduce(&self, syllables: &[(usize, i64)]) -> Result<Word> {
        let mut w = Word::identity();
        for &(factor, exp) in syllables {
            let Some(&n) = self.orders.get(factor) else {
                return Err(Error::config("word", format!("factor {factor} out of range")));
            };
            let e = exp.rem_euclid(n as i64) as usize;
            if e != 0 {
                w = self.mul(&w, &Word(vec![Syllable { factor, exp: e }]));
            }
        }
        Ok(w)
    }

    /// Words of length exactly `k` (a sphere), sorted.
    pub fn sphere(&self, k: usize) -> Result<Vec<Word>> {
        Ok(self
            .ball(k)?
            .into_iter()
            .filter(|w| self.word_length(w) == k)
            .collect())
    }

    fn extend(
        &self,
        prefix: &mut Vec<Syllable>,
        budget: usize,
        out: &mut Vec<Word>,
        radius: usize,
    ) -> Result<()> {
        let last = prefix.last().map(|s| s.factor);
        for factor in 0..self.orders.len() {
            if Some(factor) == last {
                continue;
            }
            for exp in 1..self.orders[factor] {
                let s = Syllable { factor, exp };
                let c = self.cost(&s);
                if c > budget {
                    continue;
                }
                prefix.push(s);
                out.push(Word(prefix.clone()));
                if out.len() > self.guard {
                    return Err(Error::EnumerationGuard {
                        bound: self.guard,
                        shell: radius,
                    });
                }
                self.extend(prefix, budget - c, out, radius)?;
                prefix.pop();
            }
        }
        Ok(())
    }
}

impl GroupLaw for FreeProduct {
    type Elem = Word;

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn mul(&self, a: &Word, b: &Word) -> Word {
        let mut left = a.0.clone();
        let mut right = b.0.iter().copied().peekable();
        while let (Some(l), Some(r)) = (left.last().copied(), right.peek().copied()) {
            if l.factor != r.factor {
                break;
            }
            right.next();
            left.pop();
            let e = (l.exp + r.exp) % self.orders[l.factor];
            if e != 0 {
                left.push(Syllable {
                    factor: l.factor,
                    exp: e,
                });
                break;
            }
        }
        left.extend(right);
        Word(left)
    }

    fn inv(&self, a: &Word) -> Word {
        Word(
            a.0.iter()
                .rev()
                .map(|s| Syllable {
                    factor: s.factor,
                    exp: self.orders[s.factor] - s.exp,
                })
                .collect(),
        )
    }

    fn describe(&self, a: &Word) -> String {
        if a.is_identity() {
            return "e".into();
        }
        a.0.iter()
            .map(|s| {
                let letter = (b's' + s.factor as u8) as char;
                if s.exp == 1 {
                    letter.to_string()
                } else {
                    format!("{letter}^{}", s.exp)
                }
            })
            .collect::<Vec<_>>()
            .join("")
    }

    fn generators(&self) -> Vec<Word> {
        (0..self.orders.len()).map(|f| self.generator(f)).collect()
    }

    fn finite_elements(&self) -> Option<Vec<Word>> {
        None
    }
}

impl EnumerableGroup for FreeProduct {
    fn word_length(&self, a: &Word) -> usize {
        a.0.iter().map(|s| self.cost(s)).sum()
    }

    fn ball(&self, radius: usize) -> Result<Vec<Word>> {
        let mut out = vec![Word::identity()];
        self.extend(&mut Vec::new(), radius, &mut out, radius)?;
        out.sort();
        Ok(out)
    }
}
