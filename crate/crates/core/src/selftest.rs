//! A quick desk-scale run of the main consistency checks, small enough for
//! the command line.

use crate::cft::{bundled_constants, reciprocity_check, verify_constants, Tri};
use crate::dioph::{
    emit_anisotropy_formula, emit_isotropy_system, eval_formula, SemanticEvaluator, Witness,
};
use crate::error::Result;
use crate::field::{elems_of_height, Elem, GlobalField};
use crate::hilbert::{candidate_places, hilbert_symbol};
use crate::oracle::{k_min, local_solvable};
use crate::qform::{check_certificate, decide_diagonal, DecideOptions, QuadForm, Verdict};

type Check = fn() -> Result<(usize, Vec<String>)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn squarefree(n: i64) -> bool {
    n != 0
        && (2..=n.abs())
            .take_while(|p| p * p <= n.abs())
            .all(|p| n % (p * p) != 0)
}

fn q_vals(range: i64) -> Vec<Elem> {
    (-range..=range)
        .filter(|&n| squarefree(n))
        .map(|n| GlobalField::Rationals.int(n))
        .collect()
}

fn ff_vals(q: u64) -> Vec<Elem> {
    let field = GlobalField::function_field(q).expect("odd prime");
    (0..=1)
        .flat_map(|h| elems_of_height(field, h))
        .filter(|x| !x.is_zero())
        .collect()
}

fn symbol_vs_oracle() -> Result<(usize, Vec<String>)> {
    let mut n = 0;
    let mut bad = Vec::new();
    let vals = q_vals(6);
    for a in &vals {
        for b in &vals {
            for v in candidate_places(a, b)? {
                let coeffs = [a.clone(), b.clone(), -GlobalField::Rationals.one()];
                let local = local_solvable(&coeffs, &v, k_min(&coeffs, &v)?)?;
                n += 1;
                if (hilbert_symbol(a, b, &v)? == 1) != local {
                    bad.push(format!("({a},{b})_{v}"));
                }
            }
        }
    }
    Ok((n, bad))
}

fn product_formula() -> Result<(usize, Vec<String>)> {
    let mut n = 0;
    let mut bad = Vec::new();
    let mut pools = vec![q_vals(12)];
    pools.extend([3, 5].map(ff_vals));
    for vals in pools {
        for a in &vals {
            for b in &vals {
                let mut prod = 1;
                for v in candidate_places(a, b)? {
                    prod *= hilbert_symbol(a, b, &v)?;
                }
                n += 1;
                if prod != 1 {
                    bad.push(format!("({a},{b})"));
                }
            }
        }
    }
    Ok((n, bad))
}

fn decide_round_trip() -> Result<(usize, Vec<String>)> {
    let mut n = 0;
    let mut bad = Vec::new();
    let opts = DecideOptions::default();
    let vals = q_vals(5);
    for a in &vals {
        for b in &vals {
            let coeffs = [GlobalField::Rationals.one(), a.clone(), b.clone()];
            let form = QuadForm::diagonal(GlobalField::Rationals, &coeffs)?;
            let d = decide_diagonal(GlobalField::Rationals, &coeffs, &opts)?;
            n += 1;
            let ok = check_certificate(&form, &d.certificate);
            if !ok.valid {
                bad.push(format!("<1,{a},{b}>: {}", ok.reason));
            }
            if d.verdict == Verdict::Isotropic && d.witness().is_none() {
                bad.push(format!("<1,{a},{b}>: no witness"));
            }
        }
    }
    Ok((n, bad))
}

fn fixtures() -> Result<(usize, Vec<String>)> {
    let mut n = 0;
    let mut bad = Vec::new();
    for field in [
        GlobalField::Rationals,
        GlobalField::function_field(3)?,
        GlobalField::function_field(5)?,
        GlobalField::function_field(7)?,
    ] {
        let consts = bundled_constants(field)?;
        let report = verify_constants(&consts, 60)?;
        n += report.checks.iter().sum::<u64>() as usize;
        bad.extend(report.failures.iter().map(|f| format!("{field}: {f}")));
        let rec = reciprocity_check(&consts, 300)?;
        if !rec.passed() {
            bad.push(format!("{field}: reciprocity"));
        }
    }
    Ok((n, bad))
}

fn formulas() -> Result<(usize, Vec<String>)> {
    let mut n = 0;
    let mut bad = Vec::new();
    let ev = SemanticEvaluator::new(Some(bundled_constants(GlobalField::Rationals)?));
    let opts = DecideOptions {
        search_witness: false,
        ..DecideOptions::default()
    };
    let q = GlobalField::Rationals;
    for coeffs in [
        vec![1, -1],
        vec![1, 1],
        vec![1, 1, 1],
        vec![1, 1, -2],
        vec![1, 1, 1, 7],
        vec![1, 2, 3, -5],
    ] {
        let c: Vec<Elem> = coeffs.iter().map(|&x| q.int(x)).collect();
        let f = emit_anisotropy_formula(&c, ev.consts.as_ref())?;
        let s = ev.satisfiable(&f, &Witness::new())?;
        let expect = decide_diagonal(q, &c, &opts)?.verdict == Verdict::Anisotropic;
        n += 1;
        if s.value != Tri::from(expect) {
            bad.push(format!("{coeffs:?}: sentence {:?}", s.value));
        }
    }
    let f = emit_isotropy_system(&[q.int(1), q.int(1), q.int(-2)])?;
    let w: Witness = [("x1", 1), ("x2", 1), ("x3", 1), ("y", 1)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), q.int(v)))
        .collect();
    n += 1;
    if !eval_formula(&f, &w, &ev)? {
        bad.push("isotropy system rejects (1,1,1)".into());
    }
    Ok((n, bad))
}

/// Runs every check; errors inside a check count as a failure of that check.
pub fn run() -> Vec<CheckResult> {
    let checks: [(&'static str, Check); 5] = [
        ("symbol_vs_oracle", symbol_vs_oracle),
        ("product_formula", product_formula),
        ("decide_certificates", decide_round_trip),
        ("constants_fixtures", fixtures),
        ("formula_semantics", formulas),
    ];
    checks
        .into_iter()
        .map(|(name, f)| match f() {
            Ok((n, bad)) if bad.is_empty() => CheckResult {
                name,
                passed: true,
                detail: format!("{n} cases"),
            },
            Ok((n, bad)) => CheckResult {
                name,
                passed: false,
                detail: format!("{} of {n} failed, first: {}", bad.len(), bad[0]),
            },
            Err(e) => CheckResult {
                name,
                passed: false,
                detail: e.to_string(),
            },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_checks_pass() {
        for r in super::run() {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
