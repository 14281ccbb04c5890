//! Acceptance suite: one pass/fail line per criterion. Expected values come
//! from brute-force helpers in this file or from the local-solvability
//! oracle, never from the routine under test.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use anisotope::cft::{
    artin_place, bundled_constants, dagger, eval_anisotropy4, eval_symbol_agreement, isolate_prime, r_delta,
    reciprocity_check, verify_constants, CftConstants, DaggerContext, GalElem, Isolation,
    ScanBound, Tri,
};
use anisotope::dioph::{
    emit_anisotropy_formula, emit_isotropy_system, eval_formula, flatten, Formula, MPoly, Node,
    SemanticEvaluator, Witness,
};
use anisotope::field::{finite_places, square_class_reps, support, Poly};
use anisotope::hilbert::{candidate_places, hilbert_symbol};
use anisotope::oracle::{k_min, local_solvable};
use anisotope::qform::{decide_diagonal, diagonalize, DecideOptions, QuadForm, Verdict};
use anisotope::{Elem, GlobalField, Place};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn qq() -> GlobalField {
    GlobalField::Rationals
}

fn ff(q: u64) -> GlobalField {
    GlobalField::function_field(q).unwrap()
}

fn squarefree(n: i64) -> bool {
    let m = n.abs();
    n != 0 && (2..).take_while(|p| p * p <= m).all(|p| m % (p * p) != 0)
}

fn isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

fn rand_poly(r: &mut ChaCha8Rng, q: u64, max_deg: usize) -> Elem {
    loop {
        let deg = r.gen_range(0..=max_deg);
        let c: Vec<u64> = (0..=deg).map(|_| r.gen_range(0..q)).collect();
        let x = Elem::from_poly(Poly::from_coeffs(q, c));
        if !x.is_zero() {
            return x;
        }
    }
}

fn rand_int(r: &mut ChaCha8Rng, bound: i64) -> Elem {
    loop {
        let n = r.gen_range(-bound..=bound);
        if n != 0 {
            return qq().int(n);
        }
    }
}

/// Local isotropy of <c_1, .., c_n> at v, straight from the oracle.
fn oracle_isotropic(c: &[Elem], v: &Place) -> bool {
    local_solvable(c, v, k_min(c, v).unwrap()).unwrap()
}

fn oracle_symbol(a: &Elem, b: &Elem, v: &Place) -> i8 {
    if oracle_isotropic(&[a.clone(), b.clone(), -a.field().one()], v) {
        1
    } else {
        -1
    }
}

fn c1_symbol_oracle() -> Outcome {
    let vals: Vec<i64> = (-30..=30).filter(|&n| squarefree(n)).collect();
    let (mut n, mut bad) = (0, Vec::new());
    for &a in &vals {
        for &b in &vals {
            let (a, b) = (qq().int(a), qq().int(b));
            for v in candidate_places(&a, &b).unwrap() {
                n += 1;
                if hilbert_symbol(&a, &b, &v).unwrap() != oracle_symbol(&a, &b, &v) {
                    bad.push(format!("({a},{b})_{v}"));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{n} symbols agree"))
    } else {
        Err(format!("{} of {n} disagree, e.g. {}", bad.len(), bad[0]))
    }
}

fn c2_product_formula() -> Outcome {
    let mut r = rng(2);
    let mut pairs: Vec<(Elem, Elem)> = (0..1000)
        .map(|_| (rand_int(&mut r, 10_000), rand_int(&mut r, 10_000)))
        .collect();
    for q in [3, 5, 7] {
        pairs.extend((0..1000).map(|_| (rand_poly(&mut r, q, 4), rand_poly(&mut r, q, 4))));
    }
    let mut bad = Vec::new();
    for (a, b) in &pairs {
        // the support is added on top of the candidate set so a missing
        // candidate would show up as a failure here
        let mut places: BTreeSet<Place> = candidate_places(a, b).unwrap().into_iter().collect();
        places.extend(support(a).unwrap());
        places.extend(support(b).unwrap());
        places.insert(a.field().infinite_place());
        let prod: i8 = places
            .iter()
            .map(|v| hilbert_symbol(a, b, v).unwrap())
            .product();
        if prod != 1 {
            bad.push(format!("({a},{b})"));
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "{} pairs (1000 over Q, 1000 each over F3, F5, F7)",
            pairs.len()
        ))
    } else {
        Err(format!("{} failures, e.g. {}", bad.len(), bad[0]))
    }
}

/// A nonzero integer zero of sum c_i x_i^2 with max |x_i| <= h, found by
/// enumerating all but the last coordinate and solving for it.
fn brute_zero(c: &[i64], h: i64) -> Option<Vec<i64>> {
    let m = c.len();
    let last = c[m - 1];
    let mut x = vec![0i64; m - 1];
    loop {
        let s: i64 = x.iter().zip(c).map(|(xi, ci)| ci * xi * xi).sum();
        if (-s) % last == 0 {
            if let Some(y) = isqrt(-s / last) {
                if y <= h && (y != 0 || x.iter().any(|&t| t != 0)) {
                    let mut out = x.clone();
                    out.push(y);
                    return Some(out);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == m - 1 {
                return None;
            }
            x[i] += 1;
            if x[i] <= h {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn c3_hasse_minkowski() -> Outcome {
    let vals: Vec<i64> = (-15..=15).filter(|&n| squarefree(n)).collect();
    let mut r = rng(3);
    let opts = DecideOptions::default();
    let (mut iso, mut aniso, mut max_h) = (0, 0, 0);
    let mut bad = Vec::new();
    for _ in 0..2000 {
        let m = r.gen_range(2..=4);
        let c: Vec<i64> = (0..m).map(|_| *vals.choose(&mut r).unwrap()).collect();
        let coeffs: Vec<Elem> = c.iter().map(|&x| qq().int(x)).collect();
        let d = decide_diagonal(qq(), &coeffs, &opts).unwrap();
        match d.verdict {
            Verdict::Isotropic => {
                iso += 1;
                let mut h = 10;
                let found = loop {
                    if let Some(z) = brute_zero(&c, h) {
                        break Some(z);
                    }
                    if h >= 10_000 {
                        break None;
                    }
                    h *= 10;
                };
                match found {
                    Some(z) => max_h = max_h.max(z.iter().map(|x| x.abs()).max().unwrap()),
                    None => bad.push(format!("{c:?}: isotropic but no zero of height <= 10^4")),
                }
                let form = QuadForm::diagonal(qq(), &coeffs).unwrap();
                if let Some(w) = d.witness() {
                    if !form.eval(w).unwrap().is_zero() {
                        bad.push(format!("{c:?}: reported witness is not a zero"));
                    }
                }
            }
            Verdict::Anisotropic => {
                aniso += 1;
                if let Some(z) = brute_zero(&c, 200) {
                    bad.push(format!("{c:?}: anisotropic but {z:?} is a zero"));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "2000 forms: {iso} isotropic (zeros up to height {max_h}), {aniso} anisotropic with no zero of height <= 200"
        ))
    } else {
        Err(format!("{} contradictions, e.g. {}", bad.len(), bad[0]))
    }
}

fn c4_u_invariant() -> Outcome {
    let mut r = rng(4);
    let field = ff(3);
    let opts = DecideOptions::default();
    let mut bad = Vec::new();
    for _ in 0..200 {
        let c: Vec<Elem> = (0..5).map(|_| rand_poly(&mut r, 3, 2)).collect();
        let d = decide_diagonal(field, &c, &opts).unwrap();
        let form = QuadForm::diagonal(field, &c).unwrap();
        let ok = d.verdict == Verdict::Isotropic
            && d.witness()
                .is_some_and(|w| w.iter().any(|x| !x.is_zero()) && form.eval(w).unwrap().is_zero());
        if !ok {
            bad.push(format!("{c:?}"));
        }
    }
    if bad.is_empty() {
        Ok("200 quinary forms over F3(t), each isotropic with a checked zero".into())
    } else {
        Err(format!("{} failures, e.g. {}", bad.len(), bad[0]))
    }
}

type Mat = Vec<Vec<Elem>>;

fn mul(a: &Mat, b: &Mat, field: GlobalField) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(field.zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

fn transpose(a: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| a[j][i].clone()).collect())
        .collect()
}

/// Leibniz expansion; fine for n <= 6.
fn det(a: &Mat, field: GlobalField) -> Elem {
    fn perms(n: usize) -> Vec<(Vec<usize>, i64)> {
        if n == 0 {
            return vec![(Vec::new(), 1)];
        }
        let mut out = Vec::new();
        for (p, s) in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                // inserting at pos creates (n-1-pos) inversions
                let sign = if (n - 1 - pos).is_multiple_of(2) {
                    s
                } else {
                    -s
                };
                out.push((q, sign));
            }
        }
        out
    }
    let n = a.len();
    let mut acc = field.zero();
    for (p, s) in perms(n) {
        let term = (0..n).fold(field.int(s), |t, i| &t * &a[i][p[i]]);
        acc = &acc + &term;
    }
    acc
}

fn c5_diagonalization() -> Outcome {
    let mut r = rng(5);
    let mut bad = Vec::new();
    for k in 0..500 {
        let field = [qq(), ff(3), ff(5), ff(7)][k % 4];
        let m = r.gen_range(1..=6);
        let mut a = vec![vec![field.zero(); m]; m];
        for i in 0..m {
            for j in i..m {
                let x = if r.gen_bool(0.3) {
                    field.zero()
                } else if field.is_rational() {
                    rand_int(&mut r, 6)
                } else {
                    rand_poly(&mut r, field.q().unwrap(), 1)
                };
                a[i][j] = x.clone();
                a[j][i] = x;
            }
        }
        let d = diagonalize(&QuadForm::symmetric(field, a.clone()).unwrap());
        let c = &d.congruence;
        let b = mul(&mul(&transpose(c), &a, field), c, field);
        let exact = (0..m).all(|i| {
            (0..m).all(|j| {
                let want = if i == j && i < d.rank() {
                    d.coeffs[i].clone()
                } else {
                    field.zero()
                };
                b[i][j] == want
            })
        });
        let dc = det(c, field);
        let da = det(&a, field);
        let db = d.coeffs.iter().fold(field.one(), |acc, x| &acc * x);
        let db = if d.rank() < m { field.zero() } else { db };
        let classes = !dc.is_zero() && db == &(&dc * &dc) * &da;
        if !exact || !classes {
            bad.push(format!("{field} {a:?}"));
        }
    }
    if bad.is_empty() {
        Ok("500 matrices over Q, F3, F5, F7: C^t A C diagonal and det B = det(C)^2 det A".into())
    } else {
        Err(format!("{} failures, e.g. {}", bad.len(), bad[0]))
    }
}

fn places_of(c: &[Elem]) -> Vec<Place> {
    let field = c[0].field();
    let mut s: BTreeSet<Place> = BTreeSet::new();
    for x in c {
        s.extend(support(x).unwrap());
    }
    s.insert(field.infinite_place());
    if field.is_rational() {
        s.insert(Place::Prime(2));
    }
    s.into_iter().collect()
}

fn c6_square_classes() -> Outcome {
    let mut r = rng(6);
    let (mut n, mut bad) = (0, Vec::new());
    for k in 0..500 {
        let c: Vec<Elem> = match k % 3 {
            0 => (0..4).map(|_| rand_int(&mut r, 60)).collect(),
            1 => (0..4).map(|_| rand_poly(&mut r, 3, 2)).collect(),
            _ => (0..4).map(|_| rand_poly(&mut r, 5, 2)).collect(),
        };
        let field = c[0].field();
        for v in places_of(&c) {
            n += 1;
            let got = anisotope::qform::local_isotropic(&c, &v).unwrap();
            // c is represented by both <a1,a2> and <-a3,-a4>
            let h_set = square_class_reps(&v, field).unwrap().iter().any(|s| {
                oracle_isotropic(&[c[0].clone(), c[1].clone(), -s.clone()], &v)
                    && oracle_isotropic(&[-c[2].clone(), -c[3].clone(), -s.clone()], &v)
            });
            if got != h_set {
                bad.push(format!("{c:?} at {v}"));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "500 quadruples, {n} (quadruple, place) pairs agree"
        ))
    } else {
        Err(format!("{} of {n} disagree, e.g. {}", bad.len(), bad[0]))
    }
}

fn c7_dagger_bridge() -> Outcome {
    let mut r = rng(7);
    let mut configs = 0;
    let mut bad = Vec::new();
    let mut by_sigma = [0usize; 4];
    'fields: for field in [qq(), ff(3), ff(5)] {
        let consts = bundled_constants(field).unwrap();
        let places: Vec<Place> = finite_places(field, 120)
            .into_iter()
            .filter(|v| !consts.modulus.contains(v))
            .collect();
        for v in places {
            let sigma = artin_place(&v, &consts).unwrap();
            let ctx = match isolate_prime(sigma, &v, &consts, 10_000) {
                Ok(Isolation::Single(p)) => DaggerContext {
                    ring: r_delta(sigma, &p, None, &consts).unwrap(),
                    s: consts.s_sigma(sigma).unwrap().clone(),
                    p,
                },
                Ok(Isolation::Pair(p, q)) => DaggerContext {
                    ring: r_delta(sigma, &p, Some(&q), &consts).unwrap(),
                    p,
                    s: q,
                },
                Err(e) => return Err(format!("{v} not isolated: {e}")),
            };
            if ctx.ring.delta != [v.clone()] {
                return Err(format!("ring of {v} is {:?}", ctx.ring.delta));
            }
            let gi = GalElem::ALL.iter().position(|s| *s == sigma).unwrap();
            if by_sigma[gi] >= 9 {
                continue;
            }
            by_sigma[gi] += 1;
            let pi = v.generator().unwrap();
            for _ in 0..3 {
                let pick = |r: &mut ChaCha8Rng| {
                    let u = if field.is_rational() {
                        rand_int(r, 40)
                    } else {
                        rand_poly(r, field.q().unwrap(), 2)
                    };
                    if r.gen_bool(0.5) {
                        &u * &pi
                    } else {
                        u
                    }
                };
                let (x, y) = (pick(&mut r), pick(&mut r));
                let h = oracle_symbol(&x, &y, &v);
                configs += 1;
                for sign in [1i8, -1] {
                    if dagger(sign, &x, &y, &ctx).unwrap() != (h == sign) {
                        bad.push(format!("dagger{sign}({x},{y}) at {v}, sigma {sigma}"));
                    }
                }
                if configs >= 100 {
                    break 'fields;
                }
            }
        }
    }
    if configs < 100 {
        return Err(format!("only {configs} configurations"));
    }
    if bad.is_empty() {
        Ok(format!(
            "{configs} configurations over Q, F3, F5, all four classes"
        ))
    } else {
        Err(format!("{} mismatches, e.g. {}", bad.len(), bad[0]))
    }
}

fn primes_upto(n: i64) -> Vec<i64> {
    (2..=n)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

/// Whether some place has (a1,a2)_v = rel * (-a3,-a4)_v with the symbols
/// taken from the oracle; rel = 1 is "differs from minus", rel = -1 the
/// opposite relation.
fn sweep(a: &[Elem; 4], want_opposite: bool) -> bool {
    let mut places = places_of(a);
    // one place outside every support: all units there
    let generic = finite_places(qq(), 200)
        .into_iter()
        .find(|v| !places.contains(v))
        .unwrap();
    places.push(generic);
    places.iter().any(|v| {
        let h12 = oracle_symbol(&a[0], &a[1], v);
        let h34 = oracle_symbol(&-&a[2], &-&a[3], v);
        if want_opposite {
            h12 == -h34
        } else {
            h12 != -h34
        }
    })
}

fn c8_quadruple_sweep() -> Outcome {
    let consts = bundled_constants(qq()).unwrap();
    let primes = primes_upto(50);
    let mut r = rng(8);
    let bound = ScanBound::new(100);
    let (mut det, mut und, mut bad) = (0, 0, Vec::new());
    let (mut det4, mut und4, mut bad4) = (0, 0, Vec::new());
    let opts = DecideOptions {
        search_witness: false,
        ..DecideOptions::default()
    };
    for _ in 0..100 {
        let a: [Elem; 4] = std::array::from_fn(|_| {
            let k = r.gen_range(0..=2);
            let n: i64 = primes.choose_multiple(&mut r, k).product();
            qq().int(if r.gen_bool(0.5) { n } else { -n })
        });
        match eval_symbol_agreement(&a, &consts, bound).unwrap().value.as_bool() {
            Some(v) => {
                det += 1;
                if v != sweep(&a, false) {
                    bad.push(format!("{a:?}"));
                }
            }
            None => und += 1,
        }
        // the opposite relation with the square condition is anisotropy
        match eval_anisotropy4(&a, &consts, bound)
            .unwrap()
            .value
            .as_bool()
        {
            Some(v) => {
                det4 += 1;
                let expect =
                    decide_diagonal(qq(), &a, &opts).unwrap().verdict == Verdict::Anisotropic;
                if v != expect {
                    bad4.push(format!("{a:?}"));
                }
            }
            None => und4 += 1,
        }
    }
    let summary = format!(
        "stated set: {det} determined, {und}% undetermined; anisotropy variant: {det4} determined, {und4}% undetermined"
    );
    if !bad.is_empty() {
        return Err(format!(
            "{summary}; {} mismatches, e.g. {}",
            bad.len(),
            bad[0]
        ));
    }
    if !bad4.is_empty() {
        return Err(format!(
            "{summary}; anisotropy variant mismatches, e.g. {}",
            bad4[0]
        ));
    }
    if und > 5 || und4 > 5 {
        return Err(format!("{summary}; undetermined rate above 5%"));
    }
    Ok(summary)
}

/// Euler's criterion.
fn legendre(a: i64, p: i64) -> i8 {
    let (mut base, mut e, mut acc) = (a.rem_euclid(p), (p - 1) / 2, 1i64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

fn c9_constants() -> Outcome {
    let mut lines = Vec::new();
    for field in [qq(), ff(3), ff(5), ff(7)] {
        let consts: CftConstants = bundled_constants(field).unwrap();
        let report = verify_constants(&consts, 500).unwrap();
        if !report.passed() {
            return Err(format!("{field}: {:?}", report.failures));
        }
        let rec = reciprocity_check(&consts, 10_000).unwrap();
        if !rec.passed() {
            return Err(format!("{field}: reciprocity {rec:?}"));
        }
        lines.push(format!(
            "{field}: {} identity checks, {} places scanned, {} congruent to 1",
            report.checks.iter().sum::<u64>(),
            rec.places_checked,
            rec.congruent_to_one
        ));
    }
    // Frobenius over Q from Legendre symbols
    let consts = bundled_constants(qq()).unwrap();
    let (a, b) = (consts.a.to_i64().unwrap(), consts.b.to_i64().unwrap());
    for p in primes_upto(10_000) {
        let v = Place::Prime(p as u64);
        if consts.modulus.contains(&v) {
            continue;
        }
        let want = GalElem(legendre(a, p), legendre(b, p));
        if artin_place(&v, &consts).unwrap() != want {
            return Err(format!("Frobenius at {p}"));
        }
        if (p - 1) % (8 * a * b) == 0 && !want.is_identity() {
            return Err(format!("{p} = 1 mod m with nontrivial Frobenius"));
        }
    }
    Ok(lines.join("; "))
}

fn c10_random_formula(
    r: &mut ChaCha8Rng,
    field: GlobalField,
    depth: u32,
    next: &mut usize,
    scope: &mut Vec<String>,
) -> Node {
    let leaf = depth == 0 || r.gen_bool(0.3);
    if leaf {
        let var =
            |r: &mut ChaCha8Rng, scope: &Vec<String>| MPoly::var(field, scope.choose(r).unwrap());
        let k = MPoly::int(field, r.gen_range(-2..=2));
        let x = var(r, scope);
        let p = match r.gen_range(0..3) {
            0 => x.sub(&k),
            1 => x.mul(&var(r, scope)).sub(&k),
            _ => x.square().sub(&k),
        };
        return Node::PolyEq(p);
    }
    match r.gen_range(0..3) {
        0 | 1 => {
            let n = r.gen_range(0..=3);
            let kids = (0..n)
                .map(|_| c10_random_formula(r, field, depth - 1, next, scope))
                .collect();
            if r.gen_bool(0.5) {
                Node::And(kids)
            } else {
                Node::Or(kids)
            }
        }
        _ => {
            let names: Vec<String> = (0..r.gen_range(1..=2))
                .map(|_| {
                    *next += 1;
                    format!("v{next}")
                })
                .collect();
            let mark = scope.len();
            scope.extend(names.iter().cloned());
            let body = c10_random_formula(r, field, depth - 1, next, scope);
            scope.truncate(mark);
            Node::Exists(names, Box::new(body))
        }
    }
}

fn c10_formulas() -> Outcome {
    let mut r = rng(10);
    let opts = DecideOptions::default();
    let plain = SemanticEvaluator::new(None);

    // isotropy systems accept the zeros found by decide
    let mut systems = 0;
    for field in [qq(), ff(3), ff(5)] {
        for _ in 0..40 {
            let m = r.gen_range(2..=5);
            let c: Vec<Elem> = (0..m)
                .map(|_| {
                    if field.is_rational() {
                        rand_int(&mut r, 12)
                    } else {
                        rand_poly(&mut r, field.q().unwrap(), 1)
                    }
                })
                .collect();
            let d = decide_diagonal(field, &c, &opts).unwrap();
            let Some(w) = d.witness() else { continue };
            let f = emit_isotropy_system(&c).unwrap();
            let mut env = Witness::new();
            for (i, x) in w.iter().enumerate() {
                env.insert(format!("x{}", i + 1), x.clone());
            }
            let pivot = w.iter().find(|x| !x.is_zero()).unwrap();
            env.insert("y".into(), pivot.inv().unwrap());
            systems += 1;
            if !eval_formula(&f, &env, &plain).unwrap() {
                return Err(format!("isotropy system rejects the zero {w:?} of {c:?}"));
            }
        }
    }

    // flattening agrees pointwise, so satisfiable in both directions
    let mut flat = 0;
    let mut both_sat = 0;
    while flat < 100 {
        let field = if flat % 2 == 0 { qq() } else { ff(3) };
        let mut next = 0;
        let mut scope = vec!["a".to_string()];
        let node = c10_random_formula(&mut r, field, 3, &mut next, &mut scope);
        let f = Formula::new(field, vec!["a".into()], node).unwrap();
        let g = flatten(&f).unwrap();
        let names: Vec<String> = std::iter::once("a".to_string())
            .chain(f.node.bound_vars())
            .collect();
        if names.len() > 5 {
            continue;
        }
        flat += 1;
        let pool: Vec<Elem> = (-2..=2).map(|k| field.int(k)).collect();
        let (mut sat_f, mut sat_g) = (false, false);
        let mut idx = vec![0usize; names.len()];
        loop {
            let env: Witness = names
                .iter()
                .zip(&idx)
                .map(|(n, &i)| (n.clone(), pool[i].clone()))
                .collect();
            let (x, y) = (
                eval_formula(&f, &env, &plain).unwrap(),
                eval_formula(&g, &env, &plain).unwrap(),
            );
            if x != y {
                return Err(format!("flatten changes {} at {env:?}", f.to_sexpr()));
            }
            sat_f |= x;
            sat_g |= y;
            let mut i = 0;
            while i < idx.len() {
                idx[i] += 1;
                if idx[i] < pool.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
        }
        if sat_f != sat_g {
            return Err(format!("satisfiability differs for {}", f.to_sexpr()));
        }
        both_sat += sat_f as usize;
    }

    // sentences against decide, m = 1..5
    let mut sentences = 0;
    let no_search = DecideOptions {
        search_witness: false,
        ..DecideOptions::default()
    };
    for field in [qq(), ff(3)] {
        let consts = bundled_constants(field).unwrap();
        let ev = SemanticEvaluator::new(Some(consts.clone()));
        for m in 1..=5 {
            let count = if m == 4 { 12 } else { 20 };
            for _ in 0..count {
                let c: Vec<Elem> = (0..m)
                    .map(|_| {
                        if field.is_rational() {
                            rand_int(&mut r, 30)
                        } else {
                            rand_poly(&mut r, 3, 2)
                        }
                    })
                    .collect();
                let f = emit_anisotropy_formula(&c, Some(&consts)).unwrap();
                let s = ev.satisfiable(&f, &Witness::new()).unwrap();
                let expect =
                    decide_diagonal(field, &c, &no_search).unwrap().verdict == Verdict::Anisotropic;
                sentences += 1;
                if s.value != Tri::from(expect) {
                    return Err(format!(
                        "{field} {c:?}: sentence {:?}, decide anisotropic = {expect}",
                        s.value
                    ));
                }
                if let Some(w) = &s.witness {
                    if !eval_formula(&f, w, &ev).unwrap() {
                        return Err(format!("{field} {c:?}: witness fails"));
                    }
                }
            }
        }
    }
    Ok(format!(
        "{systems} isotropy systems, {flat} flattenings ({both_sat} satisfiable), {sentences} sentences"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("symbol-oracle agreement", c1_symbol_oracle, Some(120)),
        ("product formula", c2_product_formula, Some(60)),
        (
            "Hasse-Minkowski vs brute force",
            c3_hasse_minkowski,
            Some(600),
        ),
        ("u-invariant of F3(t)", c4_u_invariant, None),
        ("diagonalization exactness", c5_diagonalization, Some(30)),
        ("m=4 square-class characterization", c6_square_classes, None),
        ("dagger-symbol bridge", c7_dagger_bridge, None),
        ("quadruple sweep end-to-end", c8_quadruple_sweep, None),
        ("constants verification", c9_constants, None),
        ("formula round-trips", c10_formulas, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let mut outcome = run();
        let elapsed = t.elapsed();
        if let (Ok(msg), Some(s)) = (&outcome, limit) {
            if elapsed > Duration::from_secs(s) {
                outcome = Err(format!("{msg}; took {elapsed:.1?}, limit {s}s"));
            }
        }
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{elapsed:.1?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{elapsed:.1?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
