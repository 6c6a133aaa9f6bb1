//! One PASS/FAIL line per acceptance criterion. All comparisons are exact.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use oddform::algebra::check_algebra_axioms;
use oddform::families::{build_example, classical_oracle, matrix_rep, FamilyKind};
use oddform::oddform::{build_double, check_oddform_axioms, GammaMode, OddFormIdeal, OddFormRing, Sampler};
use oddform::stability::{injective_stability_check, lambda_sr_at_most, reduce_to_smaller};
use oddform::unitary::{
    enumerate_unitary, ku1, ku1_relative, odd_orth_group_check, perfectness_check,
    relativization_check, verify_transvection_relations, RelationOptions, StabilityMaps, UnitaryElem, CLOSURE_BUDGET,
    ENUM_BUDGET,
};
use oddform::Result;

const FAMILIES: [FamilyKind; 4] =
    [FamilyKind::Linear, FamilyKind::Symplectic, FamilyKind::EvenOrthogonal, FamilyKind::OddOrthogonal];
const MODULI: [u32; 3] = [2, 3, 4];
const SP6_BUDGET: usize = 1 << 21;
const WORDS: usize = 500;
const WORD_LEN: usize = 8;

type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, fn() -> Outcome);

fn ring(kind: FamilyKind, n: usize, m: u32) -> Result<OddFormRing> {
    build_example(kind, n, m)
}

fn c1_axioms() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for kind in FAMILIES {
        for m in MODULI {
            for n in 1..=3 {
                let r = ring(kind, n, m)?;
                let a = check_algebra_axioms(r.alg());
                let o = check_oddform_axioms(&r, Sampler::default());
                checked += 1;
                if !a.is_clean() || !o.is_clean() {
                    bad.push(format!("{kind}/Z{m}/n={n}"));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{checked} rings, violations in {bad:?}")))
}

fn c2_relations() -> Outcome {
    let opts = RelationOptions { pair_limit: u64::MAX, ..Default::default() };
    let mut cases = Vec::new();
    for kind in [FamilyKind::Symplectic, FamilyKind::EvenOrthogonal] {
        for m in [2, 3] {
            cases.push((kind, 3, m));
        }
    }
    cases.push((FamilyKind::OddOrthogonal, 2, 2));
    let mut total = 0;
    let mut notes = Vec::new();
    for (kind, n, m) in cases {
        let rep = verify_transvection_relations(&ring(kind, n, m)?, opts)?;
        total += rep.violations.len();
        notes.push(format!("{kind}/F{m}/n={n}: {}", rep.violations.len()));
    }
    Ok((total == 0, notes.join(", ")))
}

fn c3_oracle() -> Outcome {
    let cases = [
        (FamilyKind::Linear, 2, 6),
        (FamilyKind::Symplectic, 2, 720),
        (FamilyKind::EvenOrthogonal, 2, 72),
        (FamilyKind::EvenOrthogonal, 1, 2),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (kind, n, expect) in cases {
        let r = ring(kind, n, 2)?;
        let u = enumerate_unitary(&r, n, ENUM_BUDGET)?;
        let ours: HashSet<_> = u.iter().map(|g| matrix_rep(kind, &r, g.beta())).collect::<Result<_>>()?;
        let oracle: HashSet<_> = classical_oracle(kind, n, 2, ENUM_BUDGET)?.into_iter().collect();
        let same = ours == oracle && ours.len() == u.len() && u.len() == expect;
        ok &= same;
        notes.push(format!("{kind} n={n}: {}/{}", u.len(), oracle.len()));
    }
    let odd = odd_orth_group_check(1, 3, ENUM_BUDGET)?;
    ok &= odd.u_order == 48 && odd.u_order == 2 * odd.so_order && odd.formula_holds == Some(true);
    notes.push(format!("odd-orth F3 n=1: |U|={} |SO|={}", odd.u_order, odd.so_order));
    Ok((ok, notes.join(", ")))
}

fn reduces(r: &OddFormRing, g: &UnitaryElem, n: usize) -> bool {
    reduce_to_smaller(r, g, n).and_then(|c| c.verify(r)).unwrap_or(false)
}

fn c4_surjective() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for kind in [FamilyKind::Symplectic, FamilyKind::EvenOrthogonal] {
        let r = ring(kind, 2, 2)?;
        let hyp = lambda_sr_at_most(&r, 2)?.holds == Some(true);
        let u = enumerate_unitary(&r, 2, ENUM_BUDGET)?;
        let good = u.par_iter().filter(|g| reduces(&r, g, 2)).count();
        ok &= hyp && good == u.len();
        notes.push(format!("{kind} U(2): {good}/{}", u.len()));
    }
    let r = ring(FamilyKind::EvenOrthogonal, 3, 2)?;
    let hyp = lambda_sr_at_most(&r, 3)?.holds == Some(true);
    let smaller = enumerate_unitary(&r, 2, ENUM_BUDGET)?;
    let gens: Vec<UnitaryElem> = r.elementary_generators(3)?.into_iter().map(|(_, g)| g).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let words: Vec<UnitaryElem> = (0..WORDS)
        .map(|_| {
            (0..WORD_LEN).fold(r.identity(), |g, _| {
                let h = if rng.gen_bool(0.5) {
                    smaller.get(rng.gen_range(0..smaller.len()))
                } else {
                    gens[rng.gen_range(0..gens.len())].clone()
                };
                r.compose(&g, &h)
            })
        })
        .collect();
    let good = words.par_iter().filter(|g| reduces(&r, g, 3)).count();
    ok &= hyp && good == WORDS;
    notes.push(format!("even-orth U(3) words: {good}/{WORDS}, Λsr hypothesis {hyp}"));
    Ok((ok, notes.join(", ")))
}

fn c5_injective() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (kind, budget) in [(FamilyKind::EvenOrthogonal, CLOSURE_BUDGET), (FamilyKind::Symplectic, SP6_BUDGET)] {
        let rep = injective_stability_check(&ring(kind, 3, 2)?, 3, budget)?;
        ok &= rep.equal;
        notes.push(format!(
            "{kind}: |EU(3)|={} |EU(3)∩U(2)|={} |EU(2)|={}",
            rep.eu_order, rep.intersection_order, rep.eu_smaller_order
        ));
        if kind == FamilyKind::EvenOrthogonal {
            ok &= (rep.eu_order, rep.intersection_order, rep.eu_smaller_order) == (20160, 36, 36);
        }
    }
    Ok((ok, notes.join("; ")))
}

fn c6_ku1() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let expect = [(FamilyKind::EvenOrthogonal, 2), (FamilyKind::Symplectic, 1), (FamilyKind::Linear, 1)];
    for (kind, order) in expect {
        let r = ring(kind, 2, 2)?;
        let t1 = ku1(&r, 1, ENUM_BUDGET, CLOSURE_BUDGET)?;
        let t2 = ku1(&r, 2, ENUM_BUDGET, CLOSURE_BUDGET)?;
        let maps = StabilityMaps::compute(&r, &t1, &t2)?;
        ok &= t1.order() == order && t2.order() == order;
        if kind == FamilyKind::EvenOrthogonal {
            ok &= maps.surjective;
        }
        notes.push(format!("{kind}: {}, {} surj={}", t1.order(), t2.order(), maps.surjective));
    }
    Ok((ok, notes.join("; ")))
}

fn c7_relativization() -> Outcome {
    let base1 = ring(FamilyKind::Symplectic, 1, 4)?;
    let ideal1 = OddFormIdeal::principal(&base1, 2, GammaMode::Max)?;
    let dbl = build_double(&base1, &ideal1)?;
    let ud = enumerate_unitary(&dbl, 1, ENUM_BUDGET)?.len();
    let ub = enumerate_unitary(&base1, 1, ENUM_BUDGET)?.len();
    let ui = ku1_relative(&base1, &ideal1, 1, ENUM_BUDGET, CLOSURE_BUDGET)?.u_order;
    let base2 = ring(FamilyKind::Symplectic, 2, 4)?;
    let ideal2 = OddFormIdeal::principal(&base2, 2, GammaMode::Max)?;
    let rel = relativization_check(&base2, &ideal2, 2, CLOSURE_BUDGET, false)?;
    let ok = ud == 384 && ui == 8 && ub == 48 && ud == ui * ub && rel.holds;
    Ok((
        ok,
        format!(
            "|U(double,1)|={ud} = {ui}·{ub}; n=2: |EU(R)|={} |N|={} split={}",
            rel.base_eu_order, rel.relative_eu_order, rel.holds
        ),
    ))
}

fn c8_lambda() -> Outcome {
    let mut bad = Vec::new();
    for kind in FAMILIES {
        for m in MODULI {
            let r = ring(kind, 2, m)?;
            if lambda_sr_at_most(&r, 2)?.holds != Some(true) {
                bad.push(format!("{kind}/Z{m}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("12 rings, failing {bad:?}")))
}

fn c9_perfect() -> Outcome {
    let rep = perfectness_check(&ring(FamilyKind::EvenOrthogonal, 3, 2)?, 3, CLOSURE_BUDGET)?;
    Ok((rep.perfect, format!("|EU(3)|={} |[EU,EU]|={}", rep.eu_order, rep.commutator_order)))
}

fn c10_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("oddform-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| oddform::Error::input(e.to_string()))?;
    let runs: [&[&str]; 3] = [
        &["ku1", "--family", "even-orth", "--mod", "2", "--rank", "2", "--seed", "5"],
        &["reduce", "--family", "symplectic", "--mod", "2", "--rank", "2", "--samples", "40", "--seed", "9"],
        &["verify", "--family", "odd-orth", "--mod", "3", "--rank", "1", "--seed", "3"],
    ];
    let mut same = true;
    for (k, args) in runs.iter().enumerate() {
        let mut outs = Vec::new();
        for rep in 0..2 {
            let path = dir.join(format!("{k}-{rep}.json"));
            let mut argv = vec!["oddform".to_string()];
            argv.extend(args.iter().map(|s| s.to_string()));
            argv.push("--out".into());
            argv.push(path.display().to_string());
            oddform::cli::run(argv);
            outs.push(std::fs::read(&path).unwrap_or_default());
        }
        same &= !outs[0].is_empty() && outs[0] == outs[1];
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok((same, format!("{} command configs run twice", runs.len())))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("axiom suites", c1_axioms),
        ("transvection relations", c2_relations),
        ("oracle equivalence", c3_oracle),
        ("surjective stability", c4_surjective),
        ("injective stability", c5_injective),
        ("KU1 tables", c6_ku1),
        ("relativization", c7_relativization),
        ("semilocal lambda stable rank", c8_lambda),
        ("perfectness", c9_perfect),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(Ok(r)) => r,
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".to_string()),
        };
        failed += usize::from(!ok);
        println!(
            "{} criterion {}: {name} [{detail}] tolerance=exact ({:.1}s)",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            t.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
