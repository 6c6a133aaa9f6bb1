use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, AlgebraDescriptor, UnitizedElem};
use crate::coeff::Span;
use crate::error::{Error, Result};

use super::FormPair;

/// An orthogonal hyperbolic family η₁, …, η_n; indices run over ±1..±n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicFamily {
    n: usize,
    /// e[pos(i)] for i = −n..−1, 1..n
    e: Vec<AlgElem>,
    q: Vec<FormPair>,
    /// e_ij for 1 ≤ i, j ≤ n, row-major
    free_units: Option<Vec<AlgElem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub rank: usize,
    pub e: Vec<(i32, Vec<u32>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_units: Option<Vec<(i32, i32, Vec<u32>)>>,
}

impl HyperbolicFamily {
    /// `e` is indexed by i = −n..−1, 1..n; q_i = (e_i, 0).
    pub fn new(n: usize, e: Vec<AlgElem>, free_units: Option<Vec<AlgElem>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::precondition("hyperbolic rank must be at least 1"));
        }
        if e.len() != 2 * n {
            return Err(Error::structural(format!("{} idempotents for rank {n}", e.len())));
        }
        if let Some(u) = &free_units {
            if u.len() != n * n {
                return Err(Error::structural("free family needs n² matrix units"));
            }
        }
        let zero = AlgElem::from_raw(vec![0; e[0].dim()]);
        let q = e.iter().map(|x| FormPair { p: x.clone(), r: zero.clone() }).collect();
        Ok(HyperbolicFamily { n, e, q, free_units })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> impl Iterator<Item = i32> {
        let n = self.n as i32;
        (-n..=n).filter(|&i| i != 0)
    }

    pub fn pos(&self, i: i32) -> usize {
        let n = self.n as i32;
        assert!(i != 0 && i.abs() <= n, "index {i} outside ±1..±{n}");
        if i < 0 {
            (i + n) as usize
        } else {
            (i - 1 + n) as usize
        }
    }

    pub fn e(&self, i: i32) -> &AlgElem {
        &self.e[self.pos(i)]
    }

    pub fn q(&self, i: i32) -> &FormPair {
        &self.q[self.pos(i)]
    }

    pub fn is_free(&self) -> bool {
        self.free_units.is_some()
    }

    /// e_ij for i, j of equal sign; e_{−i,−j} = conj(e_{ji}).
    pub fn unit(&self, alg: &AlgebraDescriptor, i: i32, j: i32) -> Option<AlgElem> {
        let u = self.free_units.as_ref()?;
        let n = self.n;
        match (i > 0, j > 0) {
            (true, true) => Some(u[(i as usize - 1) * n + j as usize - 1].clone()),
            (false, false) => {
                let (a, b) = ((-j) as usize, (-i) as usize);
                Some(alg.conj(&u[(a - 1) * n + b - 1]))
            }
            _ => None,
        }
    }

    pub fn e_plus(&self, alg: &AlgebraDescriptor) -> AlgElem {
        (1..=self.n as i32).fold(alg.zero(), |acc, i| alg.add(&acc, self.e(i)))
    }

    pub fn e_minus(&self, alg: &AlgebraDescriptor) -> AlgElem {
        (1..=self.n as i32).fold(alg.zero(), |acc, i| alg.add(&acc, self.e(-i)))
    }

    /// e_{|i|} = e_i + e_{−i}.
    pub fn e_abs(&self, alg: &AlgebraDescriptor, i: i32) -> AlgElem {
        alg.add(self.e(i), self.e(-i))
    }

    /// e₀ = 1 − Σ e_i in R⋊K.
    pub fn e_zero(&self, alg: &AlgebraDescriptor) -> UnitizedElem {
        let s = self.indices().fold(alg.zero(), |acc, i| alg.add(&acc, self.e(i)));
        UnitizedElem { r: alg.neg(&s), k: 1 }
    }

    /// Corner idempotent for an index, with 0 meaning e₀.
    pub fn idem(&self, alg: &AlgebraDescriptor, i: i32) -> UnitizedElem {
        if i == 0 {
            self.e_zero(alg)
        } else {
            alg.lift(self.e(i))
        }
    }

    /// 1 − Σ_{|a| > m} e_a: the support of the rank-m view.
    pub fn view_idem(&self, alg: &AlgebraDescriptor, m: usize) -> UnitizedElem {
        let s = self
            .indices()
            .filter(|i| i.unsigned_abs() as usize > m)
            .fold(alg.zero(), |acc, i| alg.add(&acc, self.e(i)));
        UnitizedElem { r: alg.neg(&s), k: 1 }
    }

    /// Family obtained from η₂, …, η_n, renumbered.
    pub fn drop_first(&self) -> Result<Self> {
        if self.n < 2 {
            return Err(Error::precondition("dropping a pair needs rank at least 2"));
        }
        let n = self.n;
        let e: Vec<AlgElem> = (-(n as i32)..=-2)
            .chain(2..=n as i32)
            .map(|i| self.e(i).clone())
            .collect();
        let free = self.free_units.as_ref().map(|u| {
            (1..n)
                .flat_map(|i| (1..n).map(move |j| (i, j)))
                .map(|(i, j)| u[i * n + j].clone())
                .collect()
        });
        HyperbolicFamily::new(n - 1, e, free)
    }

    /// Family with η_{n−1} and η_n merged into one pair.
    pub fn merge_last(&self, alg: &AlgebraDescriptor) -> Result<Self> {
        if self.n < 2 {
            return Err(Error::precondition("merging pairs needs rank at least 2"));
        }
        let n = self.n as i32;
        let mut e = Vec::with_capacity(2 * self.n - 2);
        e.push(alg.add(self.e(-n), self.e(1 - n)));
        for i in (2 - n)..=-1 {
            e.push(self.e(i).clone());
        }
        for i in 1..=(n - 2) {
            e.push(self.e(i).clone());
        }
        e.push(alg.add(self.e(n - 1), self.e(n)));
        HyperbolicFamily::new(self.n - 1, e, None)
    }

    pub fn to_json(&self, alg: &AlgebraDescriptor) -> FamilyJson {
        let n = self.n as i32;
        FamilyJson {
            rank: self.n,
            e: self.indices().map(|i| (i, self.e(i).coords().to_vec())).collect(),
            free_units: self.free_units.as_ref().map(|_| {
                (1..=n)
                    .flat_map(|i| (1..=n).map(move |j| (i, j)))
                    .map(|(i, j)| (i, j, self.unit(alg, i, j).unwrap().into_coords()))
                    .collect()
            }),
        }
    }

    pub fn from_json(alg: &AlgebraDescriptor, j: &FamilyJson) -> Result<Self> {
        let n = j.rank;
        if n == 0 {
            return Err(Error::input("family rank must be at least 1"));
        }
        let mut e = vec![None; 2 * n];
        for (i, v) in &j.e {
            if *i == 0 || i.unsigned_abs() as usize > n {
                return Err(Error::input(format!("family index {i} outside ±1..±{n}")));
            }
            let pos = if *i < 0 { (*i + n as i32) as usize } else { (*i - 1) as usize + n };
            e[pos] = Some(alg.elem(v.clone()).map_err(|_| Error::input("family vector length"))?);
        }
        let e: Option<Vec<AlgElem>> = e.into_iter().collect();
        let e = e.ok_or_else(|| Error::input("family must list every index ±1..±n"))?;
        let free = match &j.free_units {
            None => None,
            Some(list) => {
                let mut u = vec![None; n * n];
                for (i, jj, v) in list {
                    if *i < 1 || *jj < 1 || *i as usize > n || *jj as usize > n {
                        return Err(Error::input("free units are indexed by 1 ≤ i, j ≤ n"));
                    }
                    u[(*i as usize - 1) * n + *jj as usize - 1] =
                        Some(alg.elem(v.clone()).map_err(|_| Error::input("unit vector length"))?);
                }
                let u: Option<Vec<AlgElem>> = u.into_iter().collect();
                Some(u.ok_or_else(|| Error::input("free units must cover every (i, j)"))?)
            }
        };
        HyperbolicFamily::new(n, e, free)
    }

    /// e_{|1|}·R·e_{|i|}·R·e_{|1|} = e_{|1|}·R·e_{|1|} for every i.
    pub fn morita_equivalent(&self, alg: &AlgebraDescriptor) -> Result<bool> {
        let one = alg.lift(&self.e_abs(alg, 1));
        let base = alg.corner_basis(&one, &one)?;
        for i in 2..=self.n as i32 {
            let ei = alg.lift(&self.e_abs(alg, i));
            let ab = alg.corner_basis(&one, &ei)?;
            let ba = alg.corner_basis(&ei, &one)?;
            let prods = ab.generators().iter().flat_map(|x| {
                ba.generators().iter().map(move |y| {
                    alg.mul(&AlgElem::from_raw(x.clone()), &AlgElem::from_raw(y.clone())).into_coords()
                })
            });
            let span = Span::new(alg.ring(), alg.dim(), prods.collect::<Vec<_>>());
            if !base.generators().iter().all(|g| span.contains(g)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
