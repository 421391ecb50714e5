use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ring::{FiniteRing, OpTable};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits::Limits;

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

/// Declarative module constructions over a fixed ring.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleSpec {
    /// The ring acting on itself from the left.
    Regular,
    /// Z/d1 + ... + Z/dk as a module over a canonical Z/n ring; each di | n.
    Abelian { invariants: Vec<usize> },
    /// Explicit addition and action tables.
    Tables {
        add: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
        zero: usize,
    },
    /// Finite direct power of another module.
    DirectSum { of: Box<ModuleSpec>, copies: usize },
    /// Quotient by the submodule generated by the listed elements.
    Quotient {
        of: Box<ModuleSpec>,
        generators: Vec<usize>,
    },
}

/// A finite left module, everything tabulated.
#[derive(Debug)]
pub struct FiniteModule {
    pub ring: Arc<FiniteRing>,
    pub name: String,
    pub size: usize,
    pub add: OpTable,
    pub neg: Vec<usize>,
    pub zero: usize,
    /// act.get(r, m) = r . m, indexed ring element first.
    pub act: OpTable,
    /// Unique identity for hom-set caching.
    pub id: u64,
}

impl FiniteModule {
    pub fn construct(ring: &Arc<FiniteRing>, spec: &ModuleSpec, limits: &Limits) -> Result<Arc<FiniteModule>> {
        let m = Self::build(ring, spec, limits)?;
        m.validate()?;
        Ok(Arc::new(m))
    }

    fn build(ring: &Arc<FiniteRing>, spec: &ModuleSpec, limits: &Limits) -> Result<FiniteModule> {
        match spec {
            ModuleSpec::Regular => Ok(FiniteModule {
                ring: Arc::clone(ring),
                name: ring.name.clone(),
                size: ring.size,
                add: ring.add.clone(),
                neg: ring.neg.clone(),
                zero: ring.zero,
                act: ring.mul.clone(),
                id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            }),
            ModuleSpec::Abelian { invariants } => abelian_module(ring, invariants, limits),
            ModuleSpec::Tables { add, act, zero } => {
                let size = add.len();
                check_size(size, limits)?;
                let add = OpTable::from_rows(add.clone())?;
                let act = OpTable::from_rows(act.clone())?;
                if act.rows() != ring.size {
                    return Err(Error::InvalidAction(
                        "action table must have one row per ring element".into(),
                    ));
                }
                let mut neg = vec![usize::MAX; size];
                for i in 0..size {
                    for j in 0..size {
                        if add.get(i, j) == *zero {
                            neg[i] = j;
                        }
                    }
                }
                if neg.iter().any(|&x| x == usize::MAX) {
                    return Err(Error::InvalidTables("missing additive inverse".into()));
                }
                Ok(FiniteModule {
                    ring: Arc::clone(ring),
                    name: format!("module{size}"),
                    size,
                    add,
                    neg,
                    zero: *zero,
                    act,
                    id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
                })
            }
            ModuleSpec::DirectSum { of, copies } => {
                let base = Self::build(ring, of, limits)?;
                base.validate()?;
                direct_power(&base, *copies, limits)
            }
            ModuleSpec::Quotient { of, generators } => {
                let base = Self::build(ring, of, limits)?;
                base.validate()?;
                let base = Arc::new(base);
                if let Some(&g) = generators.iter().find(|&&g| g >= base.size) {
                    return Err(Error::InvalidTables(format!(
                        "quotient generator {g} out of range for module of size {}",
                        base.size
                    )));
                }
                let sub = closure(&base, generators);
                let (q, _) = quotient_with_projection(&base, &sub)?;
                Ok(Arc::try_unwrap(q).expect("freshly built quotient"))
            }
        }
    }

    /// Exhaustive check of the left module axioms.
    pub fn validate(&self) -> Result<()> {
        let n = self.size;
        let r = &self.ring;
        if n == 0 {
            return Err(Error::InvalidTables("empty module".into()));
        }
        for i in 0..n {
            if self.add.get(self.zero, i) != i || self.add.get(i, self.zero) != i {
                return Err(Error::InvalidTables(format!("zero not additive identity at {i}")));
            }
            if self.add.get(i, self.neg[i]) != self.zero {
                return Err(Error::InvalidTables(format!("bad additive inverse at {i}")));
            }
            if self.act.get(r.one, i) != i {
                return Err(Error::InvalidAction(format!("1.m != m at m={i}")));
            }
            for j in 0..n {
                if self.add.get(i, j) >= n {
                    return Err(Error::InvalidTables("addition entry out of range".into()));
                }
                if self.add.get(i, j) != self.add.get(j, i) {
                    return Err(Error::InvalidTables(format!("addition not commutative at ({i},{j})")));
                }
                for k in 0..n {
                    if self.add.get(self.add.get(i, j), k) != self.add.get(i, self.add.get(j, k)) {
                        return Err(Error::InvalidTables(format!("addition not associative at ({i},{j},{k})")));
                    }
                }
            }
        }
        for a in 0..r.size {
            for m in 0..n {
                if self.act.get(a, m) >= n {
                    return Err(Error::InvalidAction("action entry out of range".into()));
                }
                for b in 0..r.size {
                    if self.act.get(r.mul.get(a, b), m) != self.act.get(a, self.act.get(b, m)) {
                        return Err(Error::InvalidAction(format!("(ab).m != a.(b.m) at (a={a},b={b},m={m})")));
                    }
                    if self.act.get(r.add.get(a, b), m)
                        != self.add.get(self.act.get(a, m), self.act.get(b, m))
                    {
                        return Err(Error::InvalidAction(format!("(a+b).m fails at (a={a},b={b},m={m})")));
                    }
                }
                for m2 in 0..n {
                    if self.act.get(a, self.add.get(m, m2))
                        != self.add.get(self.act.get(a, m), self.act.get(a, m2))
                    {
                        return Err(Error::InvalidAction(format!("a.(m+m') fails at (a={a},m={m},m'={m2})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The cyclic submodule Rm.
    pub fn cyclic(&self, m: usize) -> BitSet {
        // closed under addition since r.m + s.m = (r+s).m
        let mut set = BitSet::new(self.size);
        for r in 0..self.ring.size {
            set.insert(self.act.get(r, m));
        }
        set
    }

    pub fn is_submodule(&self, set: &BitSet) -> bool {
        if !set.contains(self.zero) {
            return false;
        }
        for i in set.iter() {
            for j in set.iter() {
                if !set.contains(self.add.get(i, j)) {
                    return false;
                }
            }
            for r in 0..self.ring.size {
                if !set.contains(self.act.get(r, i)) {
                    return false;
                }
            }
        }
        true
    }
}

fn check_size(size: usize, limits: &Limits) -> Result<()> {
    if size > limits.max_construct_size {
        return Err(Error::SizeLimitExceeded {
            what: "module size".into(),
            needed: size as u64,
            cap: limits.max_construct_size as u64,
        });
    }
    Ok(())
}

fn abelian_module(ring: &Arc<FiniteRing>, invariants: &[usize], limits: &Limits) -> Result<FiniteModule> {
    if !ring.is_canonical_zn() {
        return Err(Error::IncompatibleRing(
            "abelian module specs require a canonical Z/n ring".into(),
        ));
    }
    let n = ring.size;
    if invariants.is_empty() {
        return Err(Error::InvalidTables("abelian module needs at least one invariant".into()));
    }
    for &d in invariants {
        if d == 0 || n % d != 0 {
            return Err(Error::IncompatibleRing(format!(
                "invariant {d} does not divide the ring modulus {n}"
            )));
        }
    }
    let mut size: usize = 1;
    for &d in invariants {
        size = size.checked_mul(d).ok_or_else(|| Error::SizeLimitExceeded {
            what: "module size".into(),
            needed: u64::MAX,
            cap: limits.max_construct_size as u64,
        })?;
        check_size(size, limits)?;
    }
    let k = invariants.len();
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut digits = vec![0usize; k];
        for d in (0..k).rev() {
            digits[d] = idx % invariants[d];
            idx /= invariants[d];
        }
        digits
    };
    let encode = |digits: &[usize]| -> usize {
        digits
            .iter()
            .zip(invariants)
            .fold(0, |acc, (&x, &d)| acc * d + x)
    };
    let tuples: Vec<Vec<usize>> = (0..size).map(decode).collect();
    let add = OpTable::from_fn(size, size, |i, j| {
        let digits: Vec<usize> = (0..k)
            .map(|d| (tuples[i][d] + tuples[j][d]) % invariants[d])
            .collect();
        encode(&digits)
    });
    let act = OpTable::from_fn(n, size, |r, m| {
        let digits: Vec<usize> = (0..k).map(|d| (r * tuples[m][d]) % invariants[d]).collect();
        encode(&digits)
    });
    let neg: Vec<usize> = (0..size)
        .map(|i| {
            encode(
                &(0..k)
                    .map(|d| (invariants[d] - tuples[i][d]) % invariants[d])
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let name = invariants
        .iter()
        .map(|d| format!("Z{d}"))
        .collect::<Vec<_>>()
        .join("+");
    Ok(FiniteModule {
        ring: Arc::clone(ring),
        name,
        size,
        add,
        neg,
        zero: 0,
        act,
        id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
    })
}

pub fn direct_power(base: &FiniteModule, copies: usize, limits: &Limits) -> Result<FiniteModule> {
    if copies == 0 {
        return Err(Error::InvalidTables("direct sum needs at least one copy".into()));
    }
    let mut size: usize = 1;
    for _ in 0..copies {
        size = size.checked_mul(base.size).ok_or_else(|| Error::SizeLimitExceeded {
            what: "module size".into(),
            needed: u64::MAX,
            cap: limits.max_construct_size as u64,
        })?;
        check_size(size, limits)?;
    }
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut digits = vec![0usize; copies];
        for d in (0..copies).rev() {
            digits[d] = idx % base.size;
            idx /= base.size;
        }
        digits
    };
    let encode = |digits: &[usize]| -> usize {
        digits.iter().fold(0, |acc, &x| acc * base.size + x)
    };
    let tuples: Vec<Vec<usize>> = (0..size).map(decode).collect();
    let add = OpTable::from_fn(size, size, |i, j| {
        let digits: Vec<usize> = (0..copies)
            .map(|d| base.add.get(tuples[i][d], tuples[j][d]))
            .collect();
        encode(&digits)
    });
    let act = OpTable::from_fn(base.ring.size, size, |r, m| {
        let digits: Vec<usize> = (0..copies).map(|d| base.act.get(r, tuples[m][d])).collect();
        encode(&digits)
    });
    let neg: Vec<usize> = (0..size)
        .map(|i| {
            encode(
                &(0..copies)
                    .map(|d| base.neg[tuples[i][d]])
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    Ok(FiniteModule {
        ring: Arc::clone(&base.ring),
        name: format!("{}^({copies})", base.name),
        size,
        add,
        neg,
        zero: 0,
        act,
        id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
    })
}

/// Submodule generated by `seed`: close under addition and the ring action.
pub fn closure(m: &FiniteModule, seed: &[usize]) -> BitSet {
    let mut set = BitSet::new(m.size);
    set.insert(m.zero);
    let mut work: Vec<usize> = vec![m.zero];
    let push = |set: &mut BitSet, work: &mut Vec<usize>, x: usize| {
        if !set.contains(x) {
            set.insert(x);
            work.push(x);
        }
    };
    for &g in seed {
        push(&mut set, &mut work, g);
    }
    while let Some(x) = work.pop() {
        for r in 0..m.ring.size {
            push(&mut set, &mut work, m.act.get(r, x));
        }
        let members: Vec<usize> = set.iter().collect();
        for y in members {
            push(&mut set, &mut work, m.add.get(x, y));
        }
    }
    set
}

/// Build M/N together with the projection table M -> M/N. Cosets are
/// represented by their least element index, then renumbered so the zero
/// coset is 0 and representatives are increasing.
pub fn quotient_with_projection(
    m: &Arc<FiniteModule>,
    sub: &BitSet,
) -> Result<(Arc<FiniteModule>, Vec<usize>)> {
    if !m.is_submodule(sub) {
        return Err(Error::NotASubmodule {
            witness: format!("{sub}"),
        });
    }
    // coset of x = x + N; least member is the representative
    let mut rep = vec![usize::MAX; m.size];
    for x in 0..m.size {
        if rep[x] != usize::MAX {
            continue;
        }
        let mut least = x;
        let mut members = Vec::new();
        for n in sub.iter() {
            let y = m.add.get(x, n);
            members.push(y);
            if y < least {
                least = y;
            }
        }
        for y in members {
            rep[y] = least;
        }
    }
    let mut reps: Vec<usize> = (0..m.size).filter(|&x| rep[x] == x).collect();
    reps.sort_unstable();
    let index_of = |r: usize| reps.binary_search(&r).expect("representative");
    let qsize = reps.len();
    let add = OpTable::from_fn(qsize, qsize, |i, j| index_of(rep[m.add.get(reps[i], reps[j])]));
    let act = OpTable::from_fn(m.ring.size, qsize, |r, i| index_of(rep[m.act.get(r, reps[i])]));
    let neg: Vec<usize> = (0..qsize).map(|i| index_of(rep[m.neg[reps[i]]])).collect();
    let zero = index_of(rep[m.zero]);
    let proj: Vec<usize> = (0..m.size).map(|x| index_of(rep[x])).collect();
    let q = FiniteModule {
        ring: Arc::clone(&m.ring),
        name: format!("{}/{}", m.name, sub),
        size: qsize,
        add,
        neg,
        zero,
        act,
        id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
    };
    q.validate()?;
    Ok((Arc::new(q), proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::ring::RingSpec;

    fn zn(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::construct(&RingSpec::Zn { n }, &Limits::default()).unwrap())
    }

    #[test]
    fn regular_z12_submodule_closure() {
        let r = zn(12);
        let m = FiniteModule::construct(&r, &ModuleSpec::Regular, &Limits::default()).unwrap();
        let sub = closure(&m, &[4]);
        assert_eq!(sub.iter().collect::<Vec<_>>(), vec![0, 4, 8]);
        assert!(m.is_submodule(&sub));
    }

    #[test]
    fn abelian_z3_z2_has_six_elements() {
        let r = zn(6);
        let m = FiniteModule::construct(
            &r,
            &ModuleSpec::Abelian {
                invariants: vec![3, 2],
            },
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(m.size, 6);
        // (1,1) has additive order 6; index with radices (3,2) is 1*2+1
        let one = 3;
        let mut x = one;
        let mut order = 1;
        while x != m.zero {
            x = m.add.get(x, one);
            order += 1;
        }
        assert_eq!(order, 6);
    }

    #[test]
    fn abelian_invariant_must_divide_modulus() {
        let r = zn(6);
        let err = FiniteModule::construct(
            &r,
            &ModuleSpec::Abelian {
                invariants: vec![4],
            },
            &Limits::default(),
        );
        assert!(err.is_err());
    }

    #[test]
    fn quotient_of_z12_by_4z12() {
        let r = zn(12);
        let m = FiniteModule::construct(&r, &ModuleSpec::Regular, &Limits::default()).unwrap();
        let sub = closure(&m, &[4]);
        let (q, proj) = quotient_with_projection(&m, &sub).unwrap();
        assert_eq!(q.size, 4);
        assert_eq!(proj[4], proj[0]);
        assert_eq!(proj[5], proj[1]);
        assert_ne!(proj[1], proj[2]);
    }

    #[test]
    fn direct_sum_indexing_is_lexicographic() {
        let r = zn(2);
        let m = FiniteModule::construct(
            &r,
            &ModuleSpec::DirectSum {
                of: Box::new(ModuleSpec::Regular),
                copies: 2,
            },
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(m.size, 4);
        // (0,1) + (1,0) = (1,1): indices 1 + 2 = 3
        assert_eq!(m.add.get(1, 2), 3);
    }
}
