use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A binary operation table over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTable {
    rows: usize,
    cols: usize,
    data: Vec<usize>,
}

impl OpTable {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        OpTable { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::InvalidTables("ragged table".into()));
        }
        Ok(OpTable {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.data[i * self.cols + j]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
}

/// Declarative ring constructions; explicit tables are the escape hatch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingSpec {
    #[serde(alias = "Zn")]
    Zn {
        n: usize,
    },
    Matrix {
        base: Box<RingSpec>,
        size: usize,
    },
    UpperTriangular {
        base: Box<RingSpec>,
        size: usize,
    },
    Product {
        factors: Vec<RingSpec>,
    },
    Tables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    },
}

/// A finite associative unital ring given by operation tables.
#[derive(Debug)]
pub struct FiniteRing {
    pub name: String,
    pub size: usize,
    pub add: OpTable,
    pub mul: OpTable,
    /// Additive inverse of each element, derived during validation.
    pub neg: Vec<usize>,
    pub zero: usize,
    pub one: usize,
}

impl FiniteRing {
    pub fn construct(spec: &RingSpec, limits: &Limits) -> Result<FiniteRing> {
        let ring = Self::build(spec, limits)?;
        ring.validate()?;
        Ok(ring)
    }

    fn build(spec: &RingSpec, limits: &Limits) -> Result<FiniteRing> {
        match spec {
            RingSpec::Zn { n } => {
                let n = *n;
                if n < 1 {
                    return Err(Error::InvalidTables("Zn requires n >= 1".into()));
                }
                check_size(n, limits)?;
                Ok(FiniteRing {
                    name: format!("Z{n}"),
                    size: n,
                    add: OpTable::from_fn(n, n, |i, j| (i + j) % n),
                    mul: OpTable::from_fn(n, n, |i, j| (i * j) % n),
                    neg: (0..n).map(|i| (n - i) % n).collect(),
                    zero: 0,
                    one: if n == 1 { 0 } else { 1 },
                })
            }
            RingSpec::Matrix { base, size } => {
                let base = Self::build(base, limits)?;
                base.validate()?;
                matrix_ring(&base, *size, false, limits)
            }
            RingSpec::UpperTriangular { base, size } => {
                let base = Self::build(base, limits)?;
                base.validate()?;
                matrix_ring(&base, *size, true, limits)
            }
            RingSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidTables("empty ring product".into()));
                }
                let rings: Vec<FiniteRing> = factors
                    .iter()
                    .map(|f| {
                        let r = Self::build(f, limits)?;
                        r.validate()?;
                        Ok(r)
                    })
                    .collect::<Result<_>>()?;
                product_ring(&rings, limits)
            }
            RingSpec::Tables {
                add,
                mul,
                zero,
                one,
            } => {
                let size = add.len();
                check_size(size, limits)?;
                let add = OpTable::from_rows(add.clone())?;
                let mul = OpTable::from_rows(mul.clone())?;
                if mul.rows() != size || (size > 0 && (*zero >= size || *one >= size)) {
                    return Err(Error::InvalidTables("table sizes/identities mismatch".into()));
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
                Ok(FiniteRing {
                    name: format!("ring{size}"),
                    size,
                    add,
                    mul,
                    neg,
                    zero: *zero,
                    one: *one,
                })
            }
        }
    }

    /// Exhaustive check of every ring axiom.
    pub fn validate(&self) -> Result<()> {
        let n = self.size;
        if n == 0 {
            return Err(Error::InvalidTables("empty ring".into()));
        }
        for i in 0..n {
            if self.add.get(self.zero, i) != i || self.add.get(i, self.zero) != i {
                return Err(Error::InvalidTables(format!("zero is not additive identity at {i}")));
            }
            if self.mul.get(self.one, i) != i || self.mul.get(i, self.one) != i {
                return Err(Error::InvalidTables(format!("one is not multiplicative identity at {i}")));
            }
            if self.add.get(i, self.neg[i]) != self.zero {
                return Err(Error::InvalidTables(format!("bad additive inverse at {i}")));
            }
            for j in 0..n {
                if self.add.get(i, j) >= n || self.mul.get(i, j) >= n {
                    return Err(Error::InvalidTables("table entry out of range".into()));
                }
                if self.add.get(i, j) != self.add.get(j, i) {
                    return Err(Error::InvalidTables(format!("addition not commutative at ({i},{j})")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.add.get(self.add.get(i, j), k) != self.add.get(i, self.add.get(j, k)) {
                        return Err(Error::InvalidTables(format!("addition not associative at ({i},{j},{k})")));
                    }
                    if self.mul.get(self.mul.get(i, j), k) != self.mul.get(i, self.mul.get(j, k)) {
                        return Err(Error::InvalidTables(format!("multiplication not associative at ({i},{j},{k})")));
                    }
                    if self.mul.get(i, self.add.get(j, k))
                        != self.add.get(self.mul.get(i, j), self.mul.get(i, k))
                    {
                        return Err(Error::InvalidTables(format!("left distributivity fails at ({i},{j},{k})")));
                    }
                    if self.mul.get(self.add.get(i, j), k)
                        != self.add.get(self.mul.get(i, k), self.mul.get(j, k))
                    {
                        return Err(Error::InvalidTables(format!("right distributivity fails at ({i},{j},{k})")));
                    }
                }
            }
        }
        if n == 1 && self.zero != self.one {
            return Err(Error::InvalidTables("zero ring must have zero = one".into()));
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size)
            .all(|i| (0..self.size).all(|j| self.mul.get(i, j) == self.mul.get(j, i)))
    }

    /// True when the tables are literally those of Z/n with the canonical
    /// indexing, which is what the abelian-group module constructor needs.
    pub fn is_canonical_zn(&self) -> bool {
        let n = self.size;
        (0..n).all(|i| {
            (0..n).all(|j| self.add.get(i, j) == (i + j) % n && self.mul.get(i, j) == (i * j) % n)
        })
    }
}

fn check_size(size: usize, limits: &Limits) -> Result<()> {
    if size > limits.max_construct_size {
        return Err(Error::SizeLimitExceeded {
            what: "ring size".into(),
            needed: size as u64,
            cap: limits.max_construct_size as u64,
        });
    }
    Ok(())
}

/// Positions of the free entries of a k-by-k matrix, full or upper triangular.
fn matrix_positions(k: usize, upper: bool) -> Vec<(usize, usize)> {
    let mut pos = Vec::new();
    for r in 0..k {
        for c in 0..k {
            if !upper || r <= c {
                pos.push((r, c));
            }
        }
    }
    pos
}

fn matrix_ring(base: &FiniteRing, k: usize, upper: bool, limits: &Limits) -> Result<FiniteRing> {
    if k == 0 {
        return Err(Error::InvalidTables("matrix size must be positive".into()));
    }
    let pos = matrix_positions(k, upper);
    let mut size: usize = 1;
    for _ in &pos {
        size = size
            .checked_mul(base.size)
            .ok_or_else(|| Error::SizeLimitExceeded {
                what: "matrix ring size".into(),
                needed: u64::MAX,
                cap: limits.max_construct_size as u64,
            })?;
        check_size(size, limits)?;
    }
    // element index <-> matrix entries, mixed radix over `pos`
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut digits = vec![0usize; pos.len()];
        for d in (0..pos.len()).rev() {
            digits[d] = idx % base.size;
            idx /= base.size;
        }
        digits
    };
    let encode = |digits: &[usize]| -> usize {
        digits.iter().fold(0, |acc, &d| acc * base.size + d)
    };
    let entry = |digits: &[usize], r: usize, c: usize| -> usize {
        match pos.iter().position(|&p| p == (r, c)) {
            Some(i) => digits[i],
            None => base.zero,
        }
    };
    let mats: Vec<Vec<usize>> = (0..size).map(decode).collect();
    let add = OpTable::from_fn(size, size, |i, j| {
        let digits: Vec<usize> = mats[i]
            .iter()
            .zip(&mats[j])
            .map(|(&a, &b)| base.add.get(a, b))
            .collect();
        encode(&digits)
    });
    let mul = OpTable::from_fn(size, size, |i, j| {
        let digits: Vec<usize> = pos
            .iter()
            .map(|&(r, c)| {
                let mut acc = base.zero;
                for t in 0..k {
                    let prod = base
                        .mul
                        .get(entry(&mats[i], r, t), entry(&mats[j], t, c));
                    acc = base.add.get(acc, prod);
                }
                acc
            })
            .collect();
        encode(&digits)
    });
    let neg: Vec<usize> = (0..size)
        .map(|i| encode(&mats[i].iter().map(|&a| base.neg[a]).collect::<Vec<_>>()))
        .collect();
    let one_digits: Vec<usize> = pos
        .iter()
        .map(|&(r, c)| if r == c { base.one } else { base.zero })
        .collect();
    Ok(FiniteRing {
        name: if upper {
            format!("UT{k}({})", base.name)
        } else {
            format!("M{k}({})", base.name)
        },
        size,
        add,
        mul,
        neg,
        zero: 0,
        one: encode(&one_digits),
    })
}

fn product_ring(rings: &[FiniteRing], limits: &Limits) -> Result<FiniteRing> {
    let mut size: usize = 1;
    for r in rings {
        size = size
            .checked_mul(r.size)
            .ok_or_else(|| Error::SizeLimitExceeded {
                what: "product ring size".into(),
                needed: u64::MAX,
                cap: limits.max_construct_size as u64,
            })?;
        check_size(size, limits)?;
    }
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut digits = vec![0usize; rings.len()];
        for d in (0..rings.len()).rev() {
            digits[d] = idx % rings[d].size;
            idx /= rings[d].size;
        }
        digits
    };
    let encode = |digits: &[usize]| -> usize {
        digits
            .iter()
            .zip(rings)
            .fold(0, |acc, (&d, r)| acc * r.size + d)
    };
    let tuples: Vec<Vec<usize>> = (0..size).map(decode).collect();
    let add = OpTable::from_fn(size, size, |i, j| {
        let digits: Vec<usize> = (0..rings.len())
            .map(|d| rings[d].add.get(tuples[i][d], tuples[j][d]))
            .collect();
        encode(&digits)
    });
    let mul = OpTable::from_fn(size, size, |i, j| {
        let digits: Vec<usize> = (0..rings.len())
            .map(|d| rings[d].mul.get(tuples[i][d], tuples[j][d]))
            .collect();
        encode(&digits)
    });
    let neg: Vec<usize> = (0..size)
        .map(|i| {
            encode(
                &(0..rings.len())
                    .map(|d| rings[d].neg[tuples[i][d]])
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let one = encode(&rings.iter().map(|r| r.one).collect::<Vec<_>>());
    let name = rings
        .iter()
        .map(|r| r.name.clone())
        .collect::<Vec<_>>()
        .join("x");
    Ok(FiniteRing {
        name,
        size,
        add,
        mul,
        neg,
        zero: 0,
        one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn zn_basic() {
        let r = FiniteRing::construct(&RingSpec::Zn { n: 12 }, &limits()).unwrap();
        assert_eq!(r.size, 12);
        assert_eq!(r.one, 1);
        assert!(r.is_commutative());
        assert!(r.is_canonical_zn());
    }

    #[test]
    fn upper_triangular_z2_matches_the_counterexample_ring() {
        let spec = RingSpec::UpperTriangular {
            base: Box::new(RingSpec::Zn { n: 2 }),
            size: 2,
        };
        let r = FiniteRing::construct(&spec, &limits()).unwrap();
        assert_eq!(r.size, 8);
        assert!(!r.is_commutative());
    }

    #[test]
    fn matrix_ring_m2f2() {
        let spec = RingSpec::Matrix {
            base: Box::new(RingSpec::Zn { n: 2 }),
            size: 2,
        };
        let r = FiniteRing::construct(&spec, &limits()).unwrap();
        assert_eq!(r.size, 16);
        assert!(!r.is_commutative());
    }

    /// Brute-force ring isomorphism search, used only as a test oracle.
    fn rings_isomorphic(a: &FiniteRing, b: &FiniteRing) -> bool {
        if a.size != b.size {
            return false;
        }
        // backtracking over images; 0 and 1 are forced
        fn extend(a: &FiniteRing, b: &FiniteRing, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>) -> bool {
            let i = match map.iter().position(|m| m.is_none()) {
                None => return true,
                Some(i) => i,
            };
            'cand: for y in 0..b.size {
                if used[y] {
                    continue;
                }
                map[i] = Some(y);
                used[y] = true;
                for x in 0..a.size {
                    if let Some(fx) = map[x] {
                        for (ta, tb) in [(&a.add, &b.add), (&a.mul, &b.mul)] {
                            for (p, q) in [(i, x), (x, i)] {
                                if let Some(fr) = map[ta.get(p, q)] {
                                    let (fp, fq) = (map[p].unwrap(), map[q].unwrap());
                                    if tb.get(fp, fq) != fr {
                                        map[i] = None;
                                        used[y] = false;
                                        continue 'cand;
                                    }
                                }
                            }
                        }
                        let _ = fx;
                    }
                }
                if extend(a, b, map, used) {
                    return true;
                }
                map[i] = None;
                used[y] = false;
            }
            false
        }
        let mut map = vec![None; a.size];
        let mut used = vec![false; b.size];
        map[a.zero] = Some(b.zero);
        used[b.zero] = true;
        if a.one != a.zero {
            if used[b.one] {
                return false;
            }
            map[a.one] = Some(b.one);
            used[b.one] = true;
        }
        extend(a, b, &mut map, &mut used)
    }

    #[test]
    fn product_z4_z3_is_z12() {
        let prod = FiniteRing::construct(
            &RingSpec::Product {
                factors: vec![RingSpec::Zn { n: 4 }, RingSpec::Zn { n: 3 }],
            },
            &limits(),
        )
        .unwrap();
        let z12 = FiniteRing::construct(&RingSpec::Zn { n: 12 }, &limits()).unwrap();
        assert_eq!(prod.size, 12);
        assert!(rings_isomorphic(&prod, &z12));
    }

    #[test]
    fn bad_tables_rejected() {
        // "multiplication" that is not associative
        let spec = RingSpec::Tables {
            add: vec![vec![0, 1], vec![1, 0]],
            mul: vec![vec![0, 1], vec![1, 1]],
            zero: 0,
            one: 1,
        };
        assert!(FiniteRing::construct(&spec, &limits()).is_err());
    }
}
