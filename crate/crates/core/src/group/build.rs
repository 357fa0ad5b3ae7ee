use super::free::FreeProduct;
use super::hom::AutAction;
use super::FiniteGroup;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// JSON-facing description of a group.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDescriptor {
    Trivial,
    Cyclic {
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    Quaternion,
    DirectSum {
        factors: Vec<GroupDescriptor>,
    },
    Semidirect {
        g: Box<GroupDescriptor>,
        lambda: Box<GroupDescriptor>,
        /// Generator id of `lambda` (as a string key) to the image table of the automorphism of `g`.
        tau: BTreeMap<String, Vec<usize>>,
    },
    FreeProduct {
        factors: Vec<GroupDescriptor>,
    },
    Table {
        rows: Vec<Vec<usize>>,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
}

#[derive(Clone, Debug)]
pub enum BuiltGroup {
    Finite(Arc<FiniteGroup>),
    Enumerable(Arc<FreeProduct>),
}

impl BuiltGroup {
    pub fn finite(&self) -> Option<&Arc<FiniteGroup>> {
        match self {
            BuiltGroup::Finite(g) => Some(g),
            BuiltGroup::Enumerable(_) => None,
        }
    }
}

pub fn build_group(desc: &GroupDescriptor) -> Result<BuiltGroup> {
    match desc {
        GroupDescriptor::FreeProduct { factors } => {
            let mut orders = Vec::with_capacity(factors.len());
            for (index, f) in factors.iter().enumerate() {
                match f {
                    GroupDescriptor::Cyclic { n } if *n >= 2 => orders.push(*n),
                    _ => return Err(Error::FreeProductFactor { index }),
                }
            }
            Ok(BuiltGroup::Enumerable(Arc::new(FreeProduct::new(orders)?)))
        }
        other => Ok(BuiltGroup::Finite(Arc::new(build_finite(other)?))),
    }
}

pub fn build_finite(desc: &GroupDescriptor) -> Result<FiniteGroup> {
    match desc {
        GroupDescriptor::Trivial => Ok(trivial_group()),
        GroupDescriptor::Cyclic { n } => {
            if *n == 0 {
                return Err(Error::config("kind=cyclic", "order must be positive"));
            }
            Ok(cyclic(*n))
        }
        GroupDescriptor::Dihedral { n } => {
            if *n == 0 {
                return Err(Error::config("kind=dihedral", "n must be positive"));
            }
            Ok(dihedral(*n))
        }
        GroupDescriptor::Symmetric { n } => symmetric(*n),
        GroupDescriptor::Quaternion => Ok(quaternion()),
        GroupDescriptor::DirectSum { factors } => {
            let built: Vec<FiniteGroup> = factors.iter().map(build_finite).collect::<Result<_>>()?;
            Ok(direct_sum(&built))
        }
        GroupDescriptor::Semidirect { g, lambda, tau } => {
            let g = Arc::new(build_finite(g)?);
            let lambda = Arc::new(build_finite(lambda)?);
            let mut gens = Vec::new();
            for (k, images) in tau {
                let id: usize = k
                    .parse()
                    .map_err(|_| Error::config(format!("tau.{k}"), "key must be an element id"))?;
                if id >= lambda.order() {
                    return Err(Error::config(format!("tau.{k}"), "element id out of range"));
                }
                gens.push((id, images.clone()));
            }
            let action = AutAction::from_generators(lambda, g, &gens)?;
            Ok(semidirect_product(&action).group().as_ref().clone())
        }
        GroupDescriptor::FreeProduct { .. } => Err(Error::Unsupported(
            "a free product is not a finite group".into(),
        )),
        GroupDescriptor::Table { rows, names } => {
            FiniteGroup::from_table("table", rows.clone(), names.clone())
        }
    }
}

pub fn trivial_group() -> FiniteGroup {
    FiniteGroup::from_flat("1".into(), 1, vec![0], vec!["e".into()]).expect("trivial group")
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    let names = (0..n).map(|k| k.to_string()).collect();
    FiniteGroup::from_flat(format!("Z/{n}"), n, table, names).expect("cyclic group")
}

/// Dihedral group of order `2n`; id `j*n + k` stands for `r^k s^j`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let order = 2 * n;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (j, k) = (a / n, a % n);
        for b in 0..order {
            let (m, l) = (b / n, b % n);
            let rot = if j == 0 { (k + l) % n } else { (k + n - l) % n };
            table.push(((j + m) % 2) * n + rot);
        }
    }
    let names = (0..order)
        .map(|a| {
            let (j, k) = (a / n, a % n);
            match (j, k) {
                (0, 0) => "e".to_string(),
                (0, k) => format!("r^{k}"),
                (_, 0) => "s".to_string(),
                (_, k) => format!("r^{k}s"),
            }
        })
        .collect();
    FiniteGroup::from_flat(format!("D{n}"), order, table, names).expect("dihedral group")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Cycle notation with 1-based points, `e` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut s = String::new();
    for start in 0..n {
        if seen[start] || p[start] == start {
            continue;
        }
        s.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            s.push_str(&(x + 1).to_string());
            x = p[x];
        }
        s.push(')');
    }
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

/// Symmetric group on `n` points; elements in lexicographic order of their
/// image arrays, product `(στ)(i) = σ(τ(i))`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 6 {
        return Err(Error::Unsupported(format!(
            "symmetric group on {n} points (supported: 1..=6)"
        )));
    }
    let perms = permutations(n);
    let index: BTreeMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let order = perms.len();
    let mut table = Vec::with_capacity(order * order);
    for a in &perms {
        for b in &perms {
            let c: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
            table.push(index[&c]);
        }
    }
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_flat(format!("S{n}"), order, table, names)
}

/// Quaternion group; ids `2*unit + sign` with units 1, i, j, k.
pub fn quaternion() -> FiniteGroup {
    // unit products: (sign, unit)
    const PROD: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = Vec::with_capacity(64);
    for a in 0..8 {
        for b in 0..8 {
            let (s, u) = PROD[a / 2][b / 2];
            let sign = (a % 2 + b % 2 + s) % 2;
            table.push(2 * u + sign);
        }
    }
    let units = ["1", "i", "j", "k"];
    let names = (0..8)
        .map(|a| {
            let u = units[a / 2];
            if a % 2 == 0 {
                u.to_string()
            } else {
                format!("-{u}")
            }
        })
        .collect();
    FiniteGroup::from_flat("Q8".into(), 8, table, names).expect("quaternion group")
}

/// Coordinates of a direct-sum element (last coordinate varies fastest).
pub fn direct_sum_coords(orders: &[usize], mut id: usize) -> Vec<usize> {
    let mut c = vec![0; orders.len()];
    for i in (0..orders.len()).rev() {
        c[i] = id % orders[i];
        id /= orders[i];
    }
    c
}

pub fn direct_sum_id(orders: &[usize], coords: &[usize]) -> usize {
    coords
        .iter()
        .zip(orders)
        .fold(0, |acc, (&c, &n)| acc * n + c)
}

pub fn direct_sum(factors: &[FiniteGroup]) -> FiniteGroup {
    if factors.is_empty() {
        return trivial_group();
    }
    let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
    let order: usize = orders.iter().product();
    let coords: Vec<Vec<usize>> = (0..order).map(|i| direct_sum_coords(&orders, i)).collect();
    let mut table = Vec::with_capacity(order * order);
    for a in &coords {
        for b in &coords {
            let c: Vec<usize> = factors
                .iter()
                .enumerate()
                .map(|(i, f)| f.mul(a[i], b[i]))
                .collect();
            table.push(direct_sum_id(&orders, &c));
        }
    }
    let names = coords
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().enumerate().map(|(i, &x)| factors[i].name(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let label = factors
        .iter()
        .map(|f| f.label().to_string())
        .collect::<Vec<_>>()
        .join("+");
    FiniteGroup::from_flat(label, order, table, names).expect("direct sum")
}

/// `G ⋊ Λ` with law `(g,r)(h,s) = (g τ_r(h), rs)` and id `r*|G| + g`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    group: Arc<FiniteGroup>,
    action: AutAction,
}

impl SemidirectProduct {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn action(&self) -> &AutAction {
        &self.action
    }
    pub fn normal(&self) -> &Arc<FiniteGroup> {
        self.action.target()
    }
    pub fn acting(&self) -> &Arc<FiniteGroup> {
        self.action.acting()
    }
    pub fn encode(&self, g: usize, r: usize) -> usize {
        r * self.normal().order() + g
    }
    pub fn decode(&self, x: usize) -> (usize, usize) {
        let n = self.normal().order();
        (x % n, x / n)
    }
}

pub fn semidirect_product(action: &AutAction) -> SemidirectProduct {
    let g = action.target();
    let l = action.acting();
    let (n, m) = (g.order(), l.order());
    let order = n * m;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (ga, ra) = (a % n, a / n);
        for b in 0..order {
            let (gb, rb) = (b % n, b / n);
            let g_new = g.mul(ga, action.apply(ra, gb));
            let r_new = l.mul(ra, rb);
            table.push(r_new * n + g_new);
        }
    }
    let names = (0..order)
        .map(|a| format!("({},{})", g.name(a % n), l.name(a / n)))
        .collect();
    let label = format!("{}x|{}", g.label(), l.label());
    let group = FiniteGroup::from_flat(label, order, table, names).expect("semidirect product");
    SemidirectProduct {
        group: Arc::new(group),
        action: action.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::hom::automorphisms;

    #[test]
    fn symmetric_three_ordering() {
        let s3 = symmetric(3).unwrap();
        let names: Vec<&str> = s3.names().iter().map(|s| s.as_str()).collect();
        assert_eq!(names, vec!["e", "(23)", "(12)", "(123)", "(132)", "(13)"]);
        s3.audit().unwrap();
        assert!(!s3.is_abelian());
    }

    #[test]
    fn small_groups_are_valid() {
        for g in [cyclic(7), dihedral(4), quaternion(), direct_sum(&[cyclic(2), cyclic(3)])] {
            g.audit().unwrap();
        }
        assert_eq!(quaternion().element_order(2), 4);
        assert!(!quaternion().is_abelian());
        assert!(direct_sum(&[cyclic(2), cyclic(3)]).is_abelian());
    }

    #[test]
    fn z3_by_inversion_is_s3() {
        let z3 = Arc::new(cyclic(3));
        let z2 = Arc::new(cyclic(2));
        let act = AutAction::from_generators(z2, z3, &[(1, vec![0, 2, 1])]).unwrap();
        let sd = semidirect_product(&act);
        let g = sd.group();
        g.audit().unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        // same multiset of element orders and class sizes as S3
        let s3 = symmetric(3).unwrap();
        let mut o1: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
        let mut o2: Vec<usize> = s3.elements().map(|a| s3.element_order(a)).collect();
        o1.sort();
        o2.sort();
        assert_eq!(o1, o2);
        assert_eq!(automorphisms(g).len(), 6);
    }

    #[test]
    fn trivial_action_gives_direct_product() {
        let z2 = Arc::new(cyclic(2));
        let act = AutAction::trivial(z2.clone(), z2.clone());
        let sd = semidirect_product(&act);
        let ds = direct_sum(&[cyclic(2), cyclic(2)]);
        // ids agree under (g,r) <-> (r,g)
        for a in 0..4 {
            for b in 0..4 {
                let (ga, ra) = sd.decode(a);
                let (gb, rb) = sd.decode(b);
                let (gc, rc) = sd.decode(sd.group().mul(a, b));
                let da = direct_sum_id(&[2, 2], &[ra, ga]);
                let db = direct_sum_id(&[2, 2], &[rb, gb]);
                assert_eq!(ds.mul(da, db), direct_sum_id(&[2, 2], &[rc, gc]));
            }
        }
    }

    #[test]
    fn trivial_lambda_returns_g() {
        let g = Arc::new(dihedral(3));
        let act = AutAction::trivial(Arc::new(trivial_group()), g.clone());
        let sd = semidirect_product(&act);
        assert_eq!(sd.group().table(), g.table());
    }

    #[test]
    fn descriptor_json_round_trip() {
        let d: GroupDescriptor = serde_json::from_str(
            r#"{"kind":"semidirect","g":{"kind":"cyclic","n":3},"lambda":{"kind":"cyclic","n":2},"tau":{"1":[0,2,1]}}"#,
        )
        .unwrap();
        let g = build_group(&d).unwrap();
        assert_eq!(g.finite().unwrap().order(), 6);
        let fp: GroupDescriptor = serde_json::from_str(
            r#"{"kind":"free_product","factors":[{"kind":"cyclic","n":2},{"kind":"symmetric","n":3}]}"#,
        )
        .unwrap();
        assert!(matches!(build_group(&fp), Err(Error::FreeProductFactor { index: 1 })));
    }
}
