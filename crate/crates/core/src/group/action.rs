use super::FiniteGroup;
use crate::{Error, Result};

pub const DEFAULT_ORBIT_BOUND: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An action of a finite group on values of type `T`.
///
/// For `Side::Right` the closure computes `x · a`.
pub struct ActionOnSet<'a, T> {
    group: &'a FiniteGroup,
    side: Side,
    act: Box<dyn Fn(usize, &T) -> T + Send + Sync + 'a>,
}

impl<'a, T: Clone + Ord> ActionOnSet<'a, T> {
    pub fn new(
        group: &'a FiniteGroup,
        side: Side,
        act: impl Fn(usize, &T) -> T + Send + Sync + 'a,
    ) -> Self {
        ActionOnSet {
            group,
            side,
            act: Box::new(act),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn act(&self, a: usize, x: &T) -> T {
        (self.act)(a, x)
    }

    /// Check the identity and composition laws on the given points.
    pub fn verify(&self, points: &[T]) -> Result<()> {
        let g = self.group;
        for x in points {
            if self.act(0, x) != *x {
                return Err(Error::NotHomomorphism("identity does not act trivially".into()));
            }
            for a in g.elements() {
                for b in g.elements() {
                    let lhs = self.act(g.mul(a, b), x);
                    let rhs = match self.side {
                        Side::Left => self.act(a, &self.act(b, x)),
                        Side::Right => self.act(b, &self.act(a, x)),
                    };
                    if lhs != rhs {
                        return Err(Error::NotHomomorphism(format!(
                            "composition law fails for ({}, {})",
                            g.name(a),
                            g.name(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit<T> {
    /// Orbit points in increasing order.
    pub points: Vec<T>,
    /// Stabilizer of the starting point, sorted ids.
    pub stabilizer: Vec<usize>,
}

/// Orbit and stabilizer of `point`; fails when the orbit exceeds `bound`.
pub fn orbit<T: Clone + Ord>(action: &ActionOnSet<'_, T>, point: &T, bound: usize) -> Result<Orbit<T>> {
    let g = action.group();
    let mut points = Vec::new();
    let mut stabilizer = Vec::new();
    for a in g.elements() {
        let y = action.act(a, point);
        if y == *point {
            stabilizer.push(a);
        }
        points.push(y);
    }
    points.sort();
    points.dedup();
    if points.len() > bound {
        return Err(Error::OrbitBound { bound });
    }
    if points.len() * stabilizer.len() != g.order() {
        return Err(Error::NotHomomorphism(format!(
            "orbit-stabilizer count fails: {} * {} != {}",
            points.len(),
            stabilizer.len(),
            g.order()
        )));
    }
    Ok(Orbit { points, stabilizer })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::symmetric;

    #[test]
    fn conjugation_orbits_in_s3() {
        let s3 = symmetric(3).unwrap();
        let id = |n: &str| s3.names().iter().position(|x| x == n).unwrap();
        let sub = crate::group::Subgroup::generated_by(std::sync::Arc::new(s3.clone()), &[id("(12)")]);
        let lam = sub.local().clone();
        let act = ActionOnSet::new(&lam, Side::Left, |a, x: &usize| {
            s3.conjugate(sub.parent_id(a), *x)
        });
        act.verify(&(0..6).collect::<Vec<_>>()).unwrap();
        let o = orbit(&act, &id("(13)"), DEFAULT_ORBIT_BOUND).unwrap();
        let mut expect = vec![id("(13)"), id("(23)")];
        expect.sort();
        assert_eq!(o.points, expect);
        assert_eq!(o.stabilizer, vec![0]);
        let o = orbit(&act, &id("(123)"), DEFAULT_ORBIT_BOUND).unwrap();
        assert_eq!(o.points, vec![id("(123)"), id("(132)")]);
        let o = orbit(&act, &0, DEFAULT_ORBIT_BOUND).unwrap();
        assert_eq!(o.points, vec![0]);
        assert_eq!(o.stabilizer.len(), 2);
    }

    #[test]
    fn orbit_bound_is_enforced() {
        let s3 = symmetric(3).unwrap();
        let act = ActionOnSet::new(&s3, Side::Left, |a, x: &usize| s3.mul(a, *x));
        assert!(matches!(orbit(&act, &0, 5), Err(Error::OrbitBound { bound: 5 })));
    }

    #[test]
    fn bad_right_action_detected() {
        let s3 = symmetric(3).unwrap();
        // left multiplication declared as a right action
        let act = ActionOnSet::new(&s3, Side::Right, |a, x: &usize| s3.mul(a, *x));
        assert!(act.verify(&[0]).is_err());
    }
}
