use serde::{Deserialize, Serialize};

use crate::algebra::AlgElem;
use crate::error::{Error, Result};
use crate::oddform::{FormPair, OddFormRing};
use crate::unitary::{TransvectionSpec, UnitaryElem};

use super::{mixed_radix, radix_total, Combiner};

/// e_i·α(g)·e_l.
fn entry(ring: &OddFormRing, g: &UnitaryElem, i: i32, l: i32) -> AlgElem {
    let a = ring.alg();
    let fam = ring.family();
    let x = a.sandwich(&fam.idem(a, i), g.beta(), &fam.idem(a, l));
    if i == l {
        a.add(&x, fam.e(l))
    } else {
        x
    }
}

fn column(ring: &OddFormRing, g: &UnitaryElem, rows: &[i32], l: i32) -> Vec<(i32, AlgElem)> {
    rows.iter().map(|&i| (i, entry(ring, g, i, l))).collect()
}

fn show_column(ring: &OddFormRing, col: &[(i32, AlgElem)]) -> String {
    let parts: Vec<String> = col.iter().map(|(i, x)| format!("{i}: {}", ring.alg().label_of(x))).collect();
    format!("[{}]", parts.join(", "))
}

fn spec_indices(s: &TransvectionSpec) -> Vec<i32> {
    match s {
        TransvectionSpec::Short { i, j, .. } => vec![*i, *j],
        TransvectionSpec::Ultrashort { i, .. } | TransvectionSpec::Dilation { i, .. } => vec![*i],
        TransvectionSpec::DilationZero { .. } => vec![],
    }
}

/// T_{il}(x) for i ≠ 0, ±l, or T_l(u).
fn in_heisenberg(s: &TransvectionSpec, l: i32) -> bool {
    match s {
        TransvectionSpec::Short { j, .. } => *j == l,
        TransvectionSpec::Ultrashort { i, .. } => *i == l,
        _ => false,
    }
}

/// Peels column l of g: returns (word, g1) with g = product(word)·g1 and column l of g1 trivial.
fn left_clear(ring: &OddFormRing, g: &UnitaryElem, n: usize, l: i32) -> Result<(Vec<TransvectionSpec>, UnitaryElem)> {
    let a = ring.alg();
    let el = ring.family().e(l).clone();
    if entry(ring, g, l, l) != el {
        return Err(Error::precondition(format!("e_{l}·α(g)·e_{l} ≠ e_{l}")));
    }
    let mut g = g.clone();
    let mut word = Vec::new();
    for i in ring.view_indices(n) {
        if i == l || i == -l {
            continue;
        }
        let c = entry(ring, &g, i, l);
        if c.is_zero() {
            continue;
        }
        let t = ring.transvection(&TransvectionSpec::Short { i, j: l, x: a.neg(&c) })?;
        g = ring.compose(&t, &g);
        word.push(TransvectionSpec::Short { i, j: l, x: c });
    }
    let c0 = entry(ring, &g, 0, l);
    let cm = entry(ring, &g, -l, l);
    let w = FormPair { p: a.neg(&c0), r: a.sub(&a.neg(&cm), &a.mul(&a.conj(&c0), &c0)) };
    if !w.is_zero() {
        if !ring.in_delta0(&w, l) {
            return Err(Error::internal(format!("residual column {} outside Δ⁰_{l}", ring.describe_pair(&w))));
        }
        let t = ring.transvection(&TransvectionSpec::Ultrashort { i: l, u: w.clone() })?;
        g = ring.compose(&t, &g);
        word.push(TransvectionSpec::Ultrashort { i: l, u: ring.dotminus(&w) });
    }
    let mut rows = ring.view_indices(n);
    rows.push(0);
    for (i, c) in column(ring, &g, &rows, l) {
        let want = if i == l { el.clone() } else { a.zero() };
        if c != want {
            return Err(Error::internal(format!("column {l} not cleared at row {i}")));
        }
    }
    Ok((word, g))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeisenbergFactor {
    pub h_plus: Vec<TransvectionSpec>,
    pub g_small: UnitaryElem,
    pub h_minus: Vec<TransvectionSpec>,
}

fn check_view(ring: &OddFormRing, g: &UnitaryElem, n: usize) -> Result<()> {
    if n == 0 || n > ring.rank() {
        return Err(Error::precondition(format!("rank {n} outside 1..={}", ring.rank())));
    }
    if !ring.is_unitary_beta(g.beta()) {
        return Err(Error::precondition("element is not unitary"));
    }
    if ring.restrict_to_smaller(g, n).is_none() {
        return Err(Error::precondition(format!("element does not lie in U({n})")));
    }
    Ok(())
}

/// g = product(h_plus)·g_small·product(h_minus)⁻¹ with g_small ∈ U(n−1); needs α_n(g) = e_n.
pub fn heisenberg_factor(ring: &OddFormRing, g: &UnitaryElem, n: usize) -> Result<HeisenbergFactor> {
    check_view(ring, g, n)?;
    let l = n as i32;
    let (h_plus, g1) = left_clear(ring, g, n, l)?;
    let (h_minus, x) = left_clear(ring, &ring.inverse(&g1), n, -l)?;
    let g_small = ring.inverse(&x);
    let rhs = ring.compose(&ring.compose(&ring.eval_word(&h_plus)?, &g_small), &ring.inverse(&ring.eval_word(&h_minus)?));
    if rhs != *g || ring.restrict_to_smaller(&g_small, n - 1).is_none() {
        return Err(Error::internal("Heisenberg factors do not recombine"));
    }
    Ok(HeisenbergFactor { h_plus, g_small, h_minus })
}

/// Exact witness that g ∈ EU(n)·U(n−1)·EU(n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub n: usize,
    pub input_beta: AlgElem,
    pub left_word: Vec<TransvectionSpec>,
    pub h_plus: Vec<TransvectionSpec>,
    pub g_small_beta: AlgElem,
    pub h_minus: Vec<TransvectionSpec>,
}

impl ReductionCertificate {
    /// product(left_word)·g = product(h_plus)·g_small·product(h_minus)⁻¹, all words inside rank n.
    pub fn verify(&self, ring: &OddFormRing) -> Result<bool> {
        let Some(g) = ring.unitary_membership(&self.input_beta) else {
            return Ok(false);
        };
        let Some(gs) = ring.unitary_membership(&self.g_small_beta) else {
            return Ok(false);
        };
        let n = self.n as i32;
        let all = self.left_word.iter().chain(&self.h_plus).chain(&self.h_minus);
        if all.flat_map(spec_indices).any(|i| i.abs() > n) {
            return Ok(false);
        }
        if !self.h_plus.iter().all(|s| in_heisenberg(s, n)) || !self.h_minus.iter().all(|s| in_heisenberg(s, -n)) {
            return Ok(false);
        }
        if ring.restrict_to_smaller(&gs, self.n.saturating_sub(1)).is_none() {
            return Ok(false);
        }
        let lhs = ring.compose(&ring.eval_word(&self.left_word)?, &g);
        let rhs = ring.compose(
            &ring.compose(&ring.eval_word(&self.h_plus)?, &gs),
            &ring.inverse(&ring.eval_word(&self.h_minus)?),
        );
        Ok(lhs == rhs)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::internal(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::input(e.to_string()))
    }
}

struct Reducer<'a> {
    ring: &'a OddFormRing,
    comb: Combiner<'a>,
    n: usize,
    cur: UnitaryElem,
    left: Vec<TransvectionSpec>,
}

impl Reducer<'_> {
    fn l(&self) -> i32 {
        self.n as i32
    }

    fn done(&self) -> bool {
        entry(self.ring, &self.cur, self.l(), self.l()) == *self.ring.family().e(self.l())
    }

    fn rows_unimodular(&self, g: &UnitaryElem, rows: &[i32]) -> Result<bool> {
        self.comb.unimodular(self.l(), &column(self.ring, g, rows, self.l()))
    }

    fn apply(&mut self, word: Vec<TransvectionSpec>) -> Result<()> {
        let h = self.ring.eval_word(&word)?;
        self.cur = self.ring.compose(&h, &self.cur);
        let mut left = word;
        left.append(&mut self.left);
        self.left = left;
        Ok(())
    }

    /// First word (in mixed-radix order over `choices`) making `rows` of column n unimodular.
    fn search<T>(
        &self,
        choices: &[Vec<T>],
        build: impl Fn(&[&T]) -> Vec<TransvectionSpec>,
        rows: &[i32],
        what: &str,
    ) -> Result<Option<Vec<TransvectionSpec>>> {
        let radices: Vec<usize> = choices.iter().map(|c| c.len()).collect();
        let total = radix_total(&radices, what)?;
        for idx in 1..total {
            let picks: Vec<&T> = mixed_radix(idx, &radices).into_iter().zip(choices).map(|(d, c)| &c[d]).collect();
            let word = build(&picks);
            let h = self.ring.eval_word(&word)?;
            if self.rows_unimodular(&self.ring.compose(&h, &self.cur), rows)? {
                return Ok(Some(word));
            }
        }
        Ok(None)
    }

    fn fail(&self, step: &str, rows: &[i32]) -> Error {
        Error::internal(format!(
            "{step}: search exhausted at column {}",
            show_column(self.ring, &column(self.ring, &self.cur, rows, self.l()))
        ))
    }

    /// α_{0′n} unimodular via T_{−i}(v_i), then short words of length ≤ 2.
    fn step_zero_block(&mut self) -> Result<()> {
        let rows = self.ring.view_indices(self.n);
        if self.done() || self.rows_unimodular(&self.cur, &rows)? {
            return Ok(());
        }
        let choices = (1..=self.l())
            .map(|i| Ok(self.ring.delta0(-i)?.iter().map(|u| (i, u.clone())).collect()))
            .collect::<Result<Vec<Vec<(i32, FormPair)>>>>()?;
        let found = self.search(
            &choices,
            |picks| {
                picks
                    .iter()
                    .filter(|(_, u)| !u.is_zero())
                    .map(|(i, u)| TransvectionSpec::Ultrashort { i: -i, u: u.clone() })
                    .collect()
            },
            &rows,
            "ultrashort search",
        )?;
        let word = match found {
            Some(w) => Some(w),
            None => self.search_generators(&rows)?,
        };
        match word {
            Some(w) => self.apply(w),
            None => Err(self.fail("zero-block step", &rows)),
        }
    }

    fn search_generators(&self, rows: &[i32]) -> Result<Option<Vec<TransvectionSpec>>> {
        let gens: Vec<TransvectionSpec> = self.ring.elementary_generators(self.n)?.into_iter().map(|(s, _)| s).collect();
        for s in &gens {
            let w = vec![s.clone()];
            if self.rows_unimodular(&self.ring.compose(&self.ring.eval_word(&w)?, &self.cur), rows)? {
                return Ok(Some(w));
            }
        }
        for s in &gens {
            for t in &gens {
                let w = vec![s.clone(), t.clone()];
                if self.rows_unimodular(&self.ring.compose(&self.ring.eval_word(&w)?, &self.cur), rows)? {
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }

    /// α_{+,n} unimodular via T_{i,−j}(x), i < j, and T_{−i}((0, a)).
    fn step_positive(&mut self) -> Result<()> {
        let n = self.l();
        let rows: Vec<i32> = (1..=n).collect();
        if self.done() || self.rows_unimodular(&self.cur, &rows)? {
            return Ok(());
        }
        let mut choices: Vec<Vec<TransvectionSpec>> = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let xs = self.ring.corner_elements(i, -j)?;
                choices.push(xs.iter().map(|x| TransvectionSpec::Short { i, j: -j, x: x.clone() }).collect());
            }
        }
        for i in 1..=n {
            let d = self.ring.delta0(-i)?;
            choices.push(
                d.iter()
                    .filter(|u| u.p.is_zero())
                    .map(|u| TransvectionSpec::Ultrashort { i: -i, u: u.clone() })
                    .collect(),
            );
        }
        let word = self.search(&choices, nontrivial, &rows, "Λsr matrix search")?;
        match word {
            Some(w) => self.apply(w),
            None => Err(self.fail("positive-block step", &rows)),
        }
    }

    /// Rows 1..n−1 unimodular via T_{in}(x_i).
    fn step_shorten(&mut self) -> Result<()> {
        let n = self.l();
        let rows: Vec<i32> = (1..n).collect();
        if self.done() || self.rows_unimodular(&self.cur, &rows)? {
            return Ok(());
        }
        let choices = rows
            .iter()
            .map(|&i| {
                Ok(self
                    .ring
                    .corner_elements(i, n)?
                    .iter()
                    .map(|x| TransvectionSpec::Short { i, j: n, x: x.clone() })
                    .collect())
            })
            .collect::<Result<Vec<Vec<_>>>>()?;
        let word = self.search(&choices, nontrivial, &rows, "sr search")?;
        match word {
            Some(w) => self.apply(w),
            None => Err(self.fail("shortening step", &(1..=n).collect::<Vec<_>>())),
        }
    }

    /// α_nn = e_n via Σ z_i α_in = e_n − α_nn.
    fn step_clear(&mut self) -> Result<()> {
        if self.done() {
            return Ok(());
        }
        let a = self.ring.alg();
        let n = self.l();
        let rows: Vec<i32> = (1..n).collect();
        let col = column(self.ring, &self.cur, &rows, n);
        let target = a.sub(self.ring.family().e(n), &entry(self.ring, &self.cur, n, n));
        let z = self.comb.solve(n, &col, &target)?.ok_or_else(|| self.fail("clearing step", &rows))?;
        let word = rows
            .iter()
            .zip(z)
            .filter(|(_, z)| !z.is_zero())
            .map(|(&i, z)| TransvectionSpec::Short { i: n, j: i, x: z })
            .collect();
        self.apply(word)?;
        if !self.done() {
            return Err(Error::internal("α_nn ≠ e_n after clearing"));
        }
        Ok(())
    }
}

fn nontrivial(picks: &[&TransvectionSpec]) -> Vec<TransvectionSpec> {
    picks
        .iter()
        .filter(|s| match s {
            TransvectionSpec::Short { x, .. } => !x.is_zero(),
            TransvectionSpec::Ultrashort { u, .. } => !u.is_zero(),
            _ => true,
        })
        .map(|s| (*s).clone())
        .collect()
}

/// Left-multiplies g by elementary words until α_nn = e_n, then factors through U(n−1).
pub fn reduce_to_smaller(ring: &OddFormRing, g: &UnitaryElem, n: usize) -> Result<ReductionCertificate> {
    if n < 2 {
        return Err(Error::precondition("reduction needs n ≥ 2"));
    }
    check_view(ring, g, n)?;
    let mut r = Reducer { ring, comb: Combiner::new(ring), n, cur: g.clone(), left: Vec::new() };
    r.step_zero_block()?;
    r.step_positive()?;
    r.step_shorten()?;
    r.step_clear()?;
    let hf = heisenberg_factor(ring, &r.cur, n)?;
    let cert = ReductionCertificate {
        n,
        input_beta: g.beta().clone(),
        left_word: r.left,
        h_plus: hf.h_plus,
        g_small_beta: hf.g_small.into_beta(),
        h_minus: hf.h_minus,
    };
    if !cert.verify(ring)? {
        return Err(Error::internal("reduction certificate failed verification"));
    }
    Ok(cert)
}
