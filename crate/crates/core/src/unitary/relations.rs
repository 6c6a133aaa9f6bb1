use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgElem;
use crate::error::Result;
use crate::oddform::{FormPair, OddFormRing};
use crate::report::AxiomReport;

use super::{TransvectionSpec, UnitaryElem};

pub const RELATION_NAMES: [&str; 14] = [
    "T_ij, T_i, D_i, D_0 are homomorphisms",
    "T_ij(x) = T_{−j,−i}(−conj(x)), D_i(a) = D_{−i}(conj(a)⁻¹)",
    "[D_i(a), D_j(b)] = 1 for i ≠ ±j",
    "[D_i(a), T_jk(x)] = 1 for j ≠ ±i ≠ k",
    "[D_i(a), T_j(u)] = 1 for 0 ≠ i ≠ ±j",
    "^{D_i(a)}T_ij(x) = T_ij(ax)",
    "^{D_i(a)}T_{−i}(u) = T_{−i}(u·conj(a))",
    "^{D_0(g)}T_i(u) = T_i(γ(g)·π(u) ∔ u) = T_i((γ(g)·π(u) ∔ u)·conj(α(g)))",
    "[T_ij(x), T_kl(y)] = 1 for i ≠ l ≠ −j ≠ −k ≠ i",
    "[T_ij(x), T_jk(y)] = T_ik(xy) for i ≠ ±k",
    "[T_{−i,j}(x), T_{ji}(y)] = T_i(φ(xy))",
    "[T_i(u), T_j(v)] = T_{−i,j}(−conj(π(u))π(v)) for i ≠ ±j",
    "[T_i(u), T_jk(x)] = 1 for j ≠ i ≠ −k",
    "[T_i(u), T_ij(x)] = T_{−i,j}(ρ(u)x) T_j(∸u·(−x))",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationOptions {
    /// parameter pairs per index tuple checked exhaustively up to this count
    pub pair_limit: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for RelationOptions {
    fn default() -> Self {
        RelationOptions { pair_limit: 4096, samples: 256, seed: 0 }
    }
}

struct Ctx<'a> {
    ring: &'a OddFormRing,
    opts: RelationOptions,
    rng: ChaCha8Rng,
    sampled: bool,
}

impl<'a> Ctx<'a> {
    fn pairs<'b, A, B>(&mut self, xs: &'b [A], ys: &'b [B]) -> Vec<(&'b A, &'b B)> {
        if xs.is_empty() || ys.is_empty() {
            return Vec::new();
        }
        if (xs.len() as u64) * (ys.len() as u64) <= self.opts.pair_limit {
            xs.iter().flat_map(|x| ys.iter().map(move |y| (x, y))).collect()
        } else {
            self.sampled = true;
            (0..self.opts.samples)
                .map(|_| (&xs[self.rng.gen_range(0..xs.len())], &ys[self.rng.gen_range(0..ys.len())]))
                .collect()
        }
    }

    fn t(&self, i: i32, j: i32, x: &AlgElem) -> Result<UnitaryElem> {
        self.ring.transvection(&TransvectionSpec::Short { i, j, x: x.clone() })
    }

    fn tu(&self, i: i32, u: &FormPair) -> Result<UnitaryElem> {
        self.ring.transvection(&TransvectionSpec::Ultrashort { i, u: u.clone() })
    }

    fn d(&self, i: i32, a: &AlgElem) -> Result<UnitaryElem> {
        self.ring.transvection(&TransvectionSpec::Dilation { i, a: a.clone() })
    }

    fn lbl(&self, x: &AlgElem) -> String {
        self.ring.alg().label_of(x)
    }

    fn pl(&self, u: &FormPair) -> String {
        self.ring.describe_pair(u)
    }
}

fn record(rep: &mut AxiomReport, rel: usize, res: Result<bool>, witness: impl FnOnce() -> String) {
    let name = RELATION_NAMES[rel - 1];
    match res {
        Ok(ok) => rep.check(ok, name, witness),
        Err(e) => rep.fail(name, format!("{}: {e}", witness())),
    }
}

struct Params {
    idx: Vec<i32>,
    corners: std::collections::HashMap<(i32, i32), Vec<AlgElem>>,
    delta0: std::collections::HashMap<i32, Vec<FormPair>>,
    units: std::collections::HashMap<i32, Vec<AlgElem>>,
    zero_block: Vec<UnitaryElem>,
}

impl Params {
    fn new(ring: &OddFormRing) -> Result<Self> {
        let idx = ring.view_indices(ring.rank());
        let mut corners = std::collections::HashMap::new();
        let mut delta0 = std::collections::HashMap::new();
        let mut units = std::collections::HashMap::new();
        for &i in &idx {
            for &j in &idx {
                if i != j && i != -j {
                    corners.insert((i, j), ring.corner_elements(i, j)?.to_vec());
                }
            }
            corners.insert((-i, i), ring.corner_elements(-i, i)?.to_vec());
            delta0.insert(i, ring.delta0(i)?.to_vec());
            units.insert(i, ring.corner_units(i)?);
        }
        Ok(Params { idx, corners, delta0, units, zero_block: ring.unitary_zero_block()? })
    }

    fn r(&self, i: i32, j: i32) -> &[AlgElem] {
        &self.corners[&(i, j)]
    }
}

fn short_pairs(idx: &[i32]) -> Vec<(i32, i32)> {
    idx.iter()
        .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
        .filter(|&(i, j)| i != j && i != -j)
        .collect()
}

/// Checks all fourteen relations; parameters are exhaustive per index tuple when small, sampled otherwise.
pub fn verify_transvection_relations(ring: &OddFormRing, opts: RelationOptions) -> Result<AxiomReport> {
    let p = Params::new(ring)?;
    let mut c = Ctx {
        ring,
        opts,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        sampled: false,
    };
    let mut rep = AxiomReport::new("transvection relations", "");
    let a = ring.alg();
    let sp = short_pairs(&p.idx);
    if ring.rank() < 2 {
        rep.notes.push(format!(
            "rank {}: relations involving two distinct pairs are vacuous",
            ring.rank()
        ));
    } else if ring.rank() < 3 {
        rep.notes.push("rank 2: relations needing three pairwise distinct |indices| are vacuous".into());
    }

    // 1
    for &(i, j) in &sp {
        let r = p.r(i, j);
        for (x, y) in c.pairs(r, r) {
            let res = (|| Ok(c.t(i, j, &a.add(x, y))? == ring.compose(&c.t(i, j, x)?, &c.t(i, j, y)?)))();
            record(&mut rep, 1, res, || format!("T_({i},{j}): x = {}, y = {}", c.lbl(x), c.lbl(y)));
        }
    }
    for &i in &p.idx {
        let d0 = &p.delta0[&i];
        for (u, v) in c.pairs(d0, d0) {
            let res = (|| Ok(c.tu(i, &ring.dotplus(u, v))? == ring.compose(&c.tu(i, u)?, &c.tu(i, v)?)))();
            record(&mut rep, 1, res, || format!("T_{i}: u = {}, v = {}", c.pl(u), c.pl(v)));
        }
        let un = &p.units[&i];
        for (x, y) in c.pairs(un, un) {
            let res = (|| Ok(c.d(i, &a.mul(x, y))? == ring.compose(&c.d(i, x)?, &c.d(i, y)?)))();
            record(&mut rep, 1, res, || format!("D_{i}: a = {}, b = {}", c.lbl(x), c.lbl(y)));
        }
    }
    let zb = p.zero_block.clone();
    for (g, h) in c.pairs(&zb, &zb) {
        let gh = ring.compose(g, h);
        let res = ring
            .transvection(&TransvectionSpec::DilationZero { beta: gh.beta().clone() })
            .map(|d| d == gh);
        record(&mut rep, 1, res, || format!("D_0: β(g) = {}, β(h) = {}", c.lbl(g.beta()), c.lbl(h.beta())));
    }

    // 2
    for &(i, j) in &sp {
        for x in p.r(i, j).to_vec() {
            let res = (|| Ok(c.t(i, j, &x)? == c.t(-j, -i, &a.neg(&a.conj(&x)))?))();
            record(&mut rep, 2, res, || format!("T_({i},{j}): x = {}", c.lbl(&x)));
        }
    }
    for &i in &p.idx {
        for x in p.units[&i].clone() {
            let res = (|| {
                let inv = a
                    .corner_inverse(&a.conj(&x), &a.lift(ring.family().e(-i)))?
                    .ok_or_else(|| crate::Error::internal("unit without inverse"))?;
                Ok(c.d(i, &x)? == c.d(-i, &inv)?)
            })();
            record(&mut rep, 2, res, || format!("D_{i}: a = {}", c.lbl(&x)));
        }
    }

    // 3
    for &i in &p.idx {
        for &j in &p.idx {
            if i == j || i == -j {
                continue;
            }
            for (x, y) in c.pairs(&p.units[&i], &p.units[&j]) {
                let res = (|| Ok(ring.commutator(&c.d(i, x)?, &c.d(j, y)?).is_identity()))();
                record(&mut rep, 3, res, || format!("i = {i}, j = {j}: a = {}, b = {}", c.lbl(x), c.lbl(y)));
            }
        }
    }

    // 4, 6
    for &i in &p.idx {
        for &(j, k) in &sp {
            if j == i || j == -i || k == i || k == -i {
                continue;
            }
            for (x, y) in c.pairs(&p.units[&i], p.r(j, k)) {
                let res = (|| Ok(ring.commutator(&c.d(i, x)?, &c.t(j, k, y)?).is_identity()))();
                record(&mut rep, 4, res, || format!("i = {i}, (j, k) = ({j}, {k}): a = {}, x = {}", c.lbl(x), c.lbl(y)));
            }
        }
        for &j in &p.idx {
            if j == i || j == -i {
                continue;
            }
            for (x, y) in c.pairs(&p.units[&i], p.r(i, j)) {
                let res = (|| Ok(ring.conjugate(&c.d(i, x)?, &c.t(i, j, y)?) == c.t(i, j, &a.mul(x, y))?))();
                record(&mut rep, 6, res, || format!("(i, j) = ({i}, {j}): a = {}, x = {}", c.lbl(x), c.lbl(y)));
            }
        }
    }

    // 5, 7
    for &i in &p.idx {
        for &j in &p.idx {
            if j == i || j == -i {
                continue;
            }
            for (x, u) in c.pairs(&p.units[&i], &p.delta0[&j]) {
                let res = (|| Ok(ring.commutator(&c.d(i, x)?, &c.tu(j, u)?).is_identity()))();
                record(&mut rep, 5, res, || format!("i = {i}, j = {j}: a = {}, u = {}", c.lbl(x), c.pl(u)));
            }
        }
        for (x, u) in c.pairs(&p.units[&i], &p.delta0[&-i]) {
            let res = (|| {
                let lhs = ring.conjugate(&c.d(i, x)?, &c.tu(-i, u)?);
                Ok(lhs == c.tu(-i, &ring.act_r(u, &a.conj(x)))?)
            })();
            record(&mut rep, 7, res, || format!("i = {i}: a = {}, u = {}", c.lbl(x), c.pl(u)));
        }
    }

    // 8
    for &i in &p.idx {
        for (g, u) in c.pairs(&zb, &p.delta0[&i]) {
            let res = (|| {
                let dg = ring.transvection(&TransvectionSpec::DilationZero { beta: g.beta().clone() })?;
                let lhs = ring.conjugate(&dg, &c.tu(i, u)?);
                let w = ring.dotplus(&ring.act_r(&ring.gamma(g), &u.p), u);
                let w2 = ring.act(&w, &a.uconj(&ring.alpha(g)));
                Ok(lhs == c.tu(i, &w)? && lhs == c.tu(i, &w2)?)
            })();
            record(&mut rep, 8, res, || format!("i = {i}: β(g) = {}, u = {}", c.lbl(g.beta()), c.pl(u)));
        }
    }

    // 9, 10
    for &(i, j) in &sp {
        for &(k, l) in &sp {
            if i != l && l != -j && j != k && k != -i {
                for (x, y) in c.pairs(p.r(i, j), p.r(k, l)) {
                    let res = (|| Ok(ring.commutator(&c.t(i, j, x)?, &c.t(k, l, y)?).is_identity()))();
                    record(&mut rep, 9, res, || {
                        format!("({i},{j}), ({k},{l}): x = {}, y = {}", c.lbl(x), c.lbl(y))
                    });
                }
            }
            if k == j && l != i && l != -i {
                for (x, y) in c.pairs(p.r(i, j), p.r(j, l)) {
                    let res = (|| {
                        Ok(ring.commutator(&c.t(i, j, x)?, &c.t(j, l, y)?) == c.t(i, l, &a.mul(x, y))?)
                    })();
                    record(&mut rep, 10, res, || format!("(i, j, k) = ({i}, {j}, {l}): x = {}, y = {}", c.lbl(x), c.lbl(y)));
                }
            }
        }
    }

    // 11, 12, 14
    for &(i, j) in &sp {
        for (x, y) in c.pairs(p.r(-i, j), p.r(j, i)) {
            let res = (|| {
                let lhs = ring.commutator(&c.t(-i, j, x)?, &c.t(j, i, y)?);
                Ok(lhs == c.tu(i, &ring.phi(&a.mul(x, y)))?)
            })();
            record(&mut rep, 11, res, || format!("(i, j) = ({i}, {j}): x = {}, y = {}", c.lbl(x), c.lbl(y)));
        }
        for (u, v) in c.pairs(&p.delta0[&i], &p.delta0[&j]) {
            let res = (|| {
                let lhs = ring.commutator(&c.tu(i, u)?, &c.tu(j, v)?);
                Ok(lhs == c.t(-i, j, &a.neg(&a.mul(&a.conj(&u.p), &v.p)))?)
            })();
            record(&mut rep, 12, res, || format!("(i, j) = ({i}, {j}): u = {}, v = {}", c.pl(u), c.pl(v)));
        }
        for (u, x) in c.pairs(&p.delta0[&i], p.r(i, j)) {
            let res = (|| {
                let lhs = ring.commutator(&c.tu(i, u)?, &c.t(i, j, x)?);
                let f = c.t(-i, j, &a.mul(&u.r, x))?;
                let s = c.tu(j, &ring.act_r(&ring.dotminus(u), &a.neg(x)))?;
                Ok(lhs == ring.compose(&f, &s))
            })();
            record(&mut rep, 14, res, || format!("(i, j) = ({i}, {j}): u = {}, x = {}", c.pl(u), c.lbl(x)));
        }
    }

    // 13
    for &i in &p.idx {
        for &(j, k) in &sp {
            if j == i || k == -i {
                continue;
            }
            for (u, x) in c.pairs(&p.delta0[&i], p.r(j, k)) {
                let res = (|| Ok(ring.commutator(&c.tu(i, u)?, &c.t(j, k, x)?).is_identity()))();
                record(&mut rep, 13, res, || format!("i = {i}, (j, k) = ({j}, {k}): u = {}, x = {}", c.pl(u), c.lbl(x)));
            }
        }
    }

    rep.mode = if c.sampled {
        format!(
            "exhaustive up to {} parameter pairs per index tuple, else {} samples (seed {})",
            opts.pair_limit, opts.samples, opts.seed
        )
    } else {
        "exhaustive".into()
    };
    Ok(rep)
}
