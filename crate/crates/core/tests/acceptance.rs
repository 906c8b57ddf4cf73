//! Acceptance battery. Runs as a plain binary so that each criterion prints
//! exactly one `criterion N: PASS|FAIL` line; exits nonzero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use coxnichols::coxeter::{chebyshev_sweep, ChebyshevOutcome};
use coxnichols::cyclo::Sign;
use coxnichols::extension::{certify, is_split};
use coxnichols::nichols::dihedral::{
    admissible_summands, compatibility, compatible, dihedral_yd, dynkin_diagram, is_admissible, Summand,
};
use coxnichols::nichols::{
    hilbert_coeffs, hilbert_equal, hilbert_reports, is_quadratic_through, matsumoto_invariance_witness,
    oracle_mismatch, sign_braiding, CyclotomicField, Mode,
};
use coxnichols::racks::{
    check_equivariance, cohomologous_solve, is_cocycle, reflection_rack, SignCocycles, Which,
};
use coxnichols::{BraidedSpace, CoxeterMatrix, GroupTable};

const BATTERY: [&str; 11] = ["A1", "A2", "A3", "A4", "I2(4)", "B3", "I2(5)", "I2(6)", "I2(7)", "H3", "D4"];
const COHOMOLOGOUS: [&str; 4] = ["A1", "A2", "I2(5)", "I2(7)"];
const MODULAR: Mode = Mode::Modular { primes: 2 };

type Outcome = Result<String, String>;

fn group(name: &str) -> GroupTable {
    GroupTable::build(&CoxeterMatrix::preset(name).unwrap()).unwrap()
}

fn all(g: &GroupTable) -> Vec<usize> {
    (0..g.num_reflections()).collect()
}

fn class_t2(g: &GroupTable) -> Vec<usize> {
    g.classes().iter().find(|c| c.len() == 3).expect("B3 has a class of size 3").clone()
}

fn spaces(g: &GroupTable, indices: &[usize]) -> (BraidedSpace, BraidedSpace) {
    (sign_braiding(g, Which::Plus, indices).unwrap(), sign_braiding(g, Which::Minus, indices).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn binomials(n: usize) -> Vec<u64> {
    (0..=n).map(|k| (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)).collect()
}

fn criterion_1() -> Outcome {
    let mut slowest = (String::new(), Duration::ZERO);
    for name in BATTERY {
        let start = Instant::now();
        let cert = certify(&group(name)).map_err(|e| format!("{name}: {e}"))?;
        let t = start.elapsed();
        for (key, v) in [("section", cert.section), ("vendramin", cert.vendramin), ("global", cert.global), ("twist", cert.twist)] {
            ensure(v == "pass", || format!("{name}: {key} = {v}"))?;
        }
        ensure(cert.order_wtilde == 2 * cert.order_w, || format!("{name}: |W~| = {}", cert.order_wtilde))?;
        ensure(t < Duration::from_secs(60), || format!("{name} took {}", secs(t)))?;
        if t > slowest.1 {
            slowest = (name.to_string(), t);
        }
    }
    Ok(format!("11 certificates, slowest {} in {}", slowest.0, secs(slowest.1)))
}

fn criterion_2() -> Outcome {
    let mut yes = Vec::new();
    for name in BATTERY {
        let g = group(name);
        let signs = SignCocycles::new(&g);
        let (qp, qm) = (signs.on_reflections(&g, Which::Plus), signs.on_reflections(&g, Which::Minus));
        let cohomologous = cohomologous_solve(&qp, &qm, &reflection_rack(&g)).is_some();
        let split = is_split(g.matrix()).is_some();
        let expected = COHOMOLOGOUS.contains(&name);
        ensure(cohomologous == expected, || format!("{name}: cohomologous = {cohomologous}"))?;
        ensure(split == cohomologous, || format!("{name}: split = {split}, cohomologous = {cohomologous}"))?;
        ensure(g.matrix().all_odd() == cohomologous, || format!("{name}: all odd disagrees"))?;
        let cert = certify(&g).map_err(|e| e.to_string())?;
        ensure(cert.cohomologous == cohomologous && cert.split == split, || format!("{name}: certificate disagrees"))?;
        if cohomologous {
            yes.push(name);
        }
    }
    Ok(format!("cohomologous exactly on {}", yes.join(", ")))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let cases: [(&str, Option<usize>, usize); 5] =
        [("A2", None, 5), ("A3", None, 4), ("I2(4)", None, 6), ("I2(5)", None, 3), ("B3", Some(3), 4)];
    for (name, class, dmax) in cases {
        let g = group(name);
        let indices = if class.is_some() { class_t2(&g) } else { all(&g) };
        let (p, m) = spaces(&g, &indices);
        let equal = hilbert_equal(&p, &m, dmax, MODULAR).map_err(|e| format!("{name}: {e}"))?;
        ensure(equal, || format!("{name}: series differ through degree {dmax}"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {}", secs(t)))?;
    Ok(format!("5 series equal in {}", secs(t)))
}

fn criterion_4() -> Outcome {
    let total = |v: &[u64]| v.iter().sum::<u64>();
    let g = group("A2");
    let (p, m) = spaces(&g, &all(&g));
    for (s, v) in [("q+", &p), ("q-", &m)] {
        let c = hilbert_coeffs(v, 5, MODULAR).map_err(|e| e.to_string())?;
        ensure(total(&c) == 12 && c[5] == 0, || format!("A2 {s}: {c:?}"))?;
    }
    // The top degree is 8, so vanishing shows up in degree 9.
    let g = group("I2(4)");
    let (p, m) = spaces(&g, &all(&g));
    for (s, v) in [("q+", &p), ("q-", &m)] {
        let c = hilbert_coeffs(v, 9, MODULAR).map_err(|e| e.to_string())?;
        ensure(total(&c) == 64 && c[9] == 0, || format!("I2(4) {s}: {c:?}"))?;
    }
    let g = group("B3");
    let (_, m) = spaces(&g, &class_t2(&g));
    let c = hilbert_coeffs(&m, 4, Mode::Exact).map_err(|e| e.to_string())?;
    ensure(c == [1, 3, 3, 1, 0], || format!("B3 T2 q-: {c:?}"))?;
    Ok("12, 64 and 1,3,3,1 (total 8)".into())
}

fn criterion_5() -> Outcome {
    let g = group("A2");
    let (p, m) = spaces(&g, &all(&g));
    let d = dihedral_yd(5, &[Summand::V { h: 5, j: 1 }, Summand::V { h: 5, j: 3 }]).map_err(|e| e.to_string())?;
    for (name, v) in [("A2 q+", &p), ("A2 q-", &m), ("dihedral r=5", &d)] {
        for n in 0..=4 {
            if let Some((r, c)) = oracle_mismatch(v, n) {
                return Err(format!("{name}, n = {n}: entry ({r}, {c}) differs"));
            }
        }
    }
    Ok("3 spaces, n = 0..4".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut shortcut = Vec::new();
    let mut count = 0;
    for name in ["A3", "B3", "H3", "I2(7)", "I2(4)"] {
        let g = group(name);
        let reports = chebyshev_sweep(&g).map_err(|e| format!("{name}: {e}"))?;
        for r in &reports {
            let m = r.m as usize;
            let tag = format!("{name} (beta {}, {}, {})", r.beta, r.i, r.j);
            ensure(r.scalars.len() == m, || format!("{tag}: {} scalars", r.scalars.len()))?;
            for (p, u) in r.scalars.iter().enumerate() {
                let want = if p + 2 <= m { Sign::Positive } else { Sign::Zero };
                let got = u.sign_real().map_err(|e| e.to_string())?;
                ensure(got == want, || format!("{tag}: u_{p} has sign {got:?}"))?;
            }
            match r.outcome {
                ChebyshevOutcome::LengthDrop => {
                    ensure(r.lengths.len() == m, || format!("{tag}: lengths {:?}", r.lengths))?;
                    ensure(r.lengths.windows(2).all(|w| w[0] == w[1] + 2), || format!("{tag}: lengths {:?}", r.lengths))?;
                }
                ChebyshevOutcome::EvenShortcut => {
                    ensure(m.is_multiple_of(2) && r.lengths[0] + 1 == m, || format!("{tag}: shortcut with lengths {:?}", r.lengths))?;
                    ensure(r.lengths.len() == m / 2 && r.lengths.last() == Some(&1), || format!("{tag}: lengths {:?}", r.lengths))?;
                    shortcut.push(name);
                }
            }
            count += 1;
        }
    }
    ensure(shortcut.iter().any(|n| *n == "B3" || *n == "I2(4)"), || "no EvenShortcut in B3 or I2(4)".into())?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {}", secs(t)))?;
    shortcut.dedup();
    Ok(format!("{count} sequences, EvenShortcut in {}, {}", shortcut.join(", "), secs(t)))
}

fn criterion_7() -> Outcome {
    let g = group("A2");
    let (p, m) = spaces(&g, &all(&g));
    let f = CyclotomicField::new(2);
    for (s, v) in [("q+", &p), ("q-", &m)] {
        let q = is_quadratic_through(v, 4, &f, Mode::Exact).map_err(|e| e.to_string())?;
        ensure(q, || format!("A2 {s} is not quadratic through degree 4"))?;
    }
    Ok("A2 q+ and q- quadratic through degree 4".into())
}

/// Multisets of `summands` with total dimension in `1..=max_dim`.
fn sums(summands: &[Summand], max_dim: usize) -> Vec<Vec<Summand>> {
    fn go(s: &[Summand], from: usize, left: usize, cur: &mut Vec<Summand>, out: &mut Vec<Vec<Summand>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in from..s.len() {
            if s[i].dim() <= left {
                cur.push(s[i]);
                go(s, i, left - s[i].dim(), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(summands, 0, max_dim, &mut Vec::new(), &mut out);
    out
}

fn incompatible_pairs_are_four_cycles(r: u32) -> Result<usize, String> {
    let adm = admissible_summands(r).map_err(|e| e.to_string())?;
    let mut n = 0;
    for (i, &a) in adm.iter().enumerate() {
        for &b in &adm[i + 1..] {
            if compatible(r, a, b) {
                continue;
            }
            let dd = dynkin_diagram(&dihedral_yd(r, &[a, b]).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let xi = dd.four_cycle_label().ok_or_else(|| format!("r = {r}: {a:?} + {b:?} is not a 4-cycle"))?;
            ensure(xi != 0, || format!("r = {r}: xi = 1"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    for r in [5u32, 7] {
        let adm = admissible_summands(r).map_err(|e| e.to_string())?;
        let mut brute = vec![Summand::V0];
        for h in 0..=2 * r {
            for j in 0..=2 * r {
                if h >= 1 && h <= r && j >= 1 && j + 2 <= r && h % 2 == 1 && j % 2 == 1 && (h * j) % r == 0 {
                    brute.push(Summand::V { h, j });
                }
            }
        }
        ensure(adm == brute, || format!("r = {r}: {adm:?} vs {brute:?}"))?;
        ensure(adm.iter().all(|s| match *s {
            Summand::V { h, j } => is_admissible(r, h, j),
            Summand::V0 => true,
        }), || "admissibility predicate disagrees".into())?;
        let mut checked = 0;
        for s in sums(&adm, 4) {
            if !compatibility(r, &s) {
                continue;
            }
            let v = dihedral_yd(r, &s).map_err(|e| e.to_string())?;
            let c = hilbert_coeffs(&v, v.dim() + 1, Mode::Exact).map_err(|e| e.to_string())?;
            let mut want = binomials(v.dim());
            want.push(0);
            ensure(c == want, || format!("r = {r}, {s:?}: {c:?}"))?;
            checked += 1;
        }
        let incompatible = incompatible_pairs_are_four_cycles(r)?;
        notes.push(format!("r={r}: {} admissible, {checked} compatible sums, {incompatible} incompatible pairs", adm.len()));
    }
    // Every admissible summand for r = 5, 7 has h = r, so no pair is
    // incompatible there; r = 9 exercises the 4-cycle shape.
    let n9 = incompatible_pairs_are_four_cycles(9)?;
    ensure(n9 > 0, || "r = 9 has no incompatible pairs".into())?;
    notes.push(format!("r=9: {n9} incompatible pairs, all 4-cycles"));
    Ok(notes.join("; "))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    for name in BATTERY {
        let g = group(name);
        let rack = reflection_rack(&g);
        ensure(rack.self_distributivity_witness().is_none(), || format!("{name}: rack axiom fails"))?;
        let signs = SignCocycles::new(&g);
        for which in [Which::Plus, Which::Minus] {
            let q = signs.on_reflections(&g, which);
            ensure(is_cocycle(&q, &rack).is_none(), || format!("{name} {which:?}: cocycle identity fails"))?;
            ensure(check_equivariance(&g, which), || format!("{name} {which:?}: equivariance fails"))?;
        }
        let (p, m) = spaces(&g, &all(&g));
        for (s, v) in [("q+", &p), ("q-", &m)] {
            ensure(v.braid_equation_witness().is_none(), || format!("{name} {s}: braid equation fails"))?;
            let n = if v.dim() <= 15 { 4 } else { 3 };
            ensure(matsumoto_invariance_witness(v, n).is_none(), || format!("{name} {s}: Matsumoto invariance fails"))?;
            let dmax = if v.dim() <= 6 { 5 } else { 3 };
            let modular = hilbert_reports(v, dmax, Mode::Modular { primes: 3 }).map_err(|e| format!("{name} {s}: {e}"))?;
            let exact = hilbert_coeffs(v, dmax.min(3), Mode::Exact).map_err(|e| format!("{name} {s}: {e}"))?;
            ensure(modular.iter().all(|r| r.agreed && r.primes.len() == 3), || format!("{name} {s}: primes disagree"))?;
            ensure(modular.iter().zip(&exact).all(|(a, b)| a.rank == *b), || format!("{name} {s}: modular and exact differ"))?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(900), || format!("took {}", secs(t)))?;
    Ok(format!("11 presets in {}", secs(t)))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    // Panics inside a criterion count as failures; keep their messages short.
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, f) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL ({detail})");
            }
        }
    }
    println!("acceptance: {} of 9 passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
