use anisotope::cft::{bundled_constants, Tri};
use anisotope::dioph::{
    emit_anisotropy_formula, emit_isotropy_system, emit_t_membership, eval_formula, flatten,
    Formula, SemanticEvaluator, Witness,
};
use anisotope::qform::{decide_diagonal, DecideOptions, Verdict};
use anisotope::{Elem, GlobalField};

fn q(xs: &[i64]) -> Vec<Elem> {
    xs.iter().map(|&x| GlobalField::Rationals.int(x)).collect()
}

fn anisotropic(field: GlobalField, a: &[Elem]) -> bool {
    let opts = DecideOptions {
        search_witness: false,
        ..DecideOptions::default()
    };
    decide_diagonal(field, a, &opts).unwrap().verdict == Verdict::Anisotropic
}

fn sentence_value(f: &Formula, ev: &SemanticEvaluator) -> Tri {
    let s = ev.satisfiable(f, &Witness::new()).unwrap();
    if let Some(w) = &s.witness {
        assert!(
            eval_formula(f, w, ev).unwrap(),
            "witness does not satisfy {}",
            f.to_sexpr()
        );
    }
    s.value
}

#[test]
fn small_sentences_match_decide_over_q() {
    let ev = SemanticEvaluator::new(None);
    let vals = [1, -1, 2, -3, 5, 6, -7];
    for &a in &vals {
        for &b in &vals {
            for m in 2..=3 {
                let c = q(&[a, b, 2 * a * b - 1][..m]);
                let f = emit_anisotropy_formula(&c, None).unwrap();
                let expect = if anisotropic(GlobalField::Rationals, &c) {
                    Tri::True
                } else {
                    Tri::False
                };
                assert_eq!(sentence_value(&f, &ev), expect, "{c:?}");
            }
        }
    }
}

#[test]
fn definiteness_sentence_for_five_variables() {
    let ev = SemanticEvaluator::new(None);
    for c in [
        q(&[1, 2, 3, 5, 7]),
        q(&[-1, -2, -1, -3, -1]),
        q(&[1, -2, 3, 5, 7]),
    ] {
        let f = emit_anisotropy_formula(&c, None).unwrap();
        let expect = if anisotropic(GlobalField::Rationals, &c) {
            Tri::True
        } else {
            Tri::False
        };
        assert_eq!(sentence_value(&f, &ev), expect, "{c:?}");
    }
    let f3 = GlobalField::function_field(3).unwrap();
    let c: Vec<Elem> = [1, 2, 1, 2, 1].iter().map(|&k| f3.int(k)).collect();
    let f = emit_anisotropy_formula(&c, None).unwrap();
    assert_eq!(sentence_value(&f, &ev), Tri::False);
}

#[test]
fn quaternary_sentence_matches_decide() {
    let consts = bundled_constants(GlobalField::Rationals).unwrap();
    let ev = SemanticEvaluator::new(Some(consts.clone()));
    for xs in [
        [1, 1, 1, 1],
        [1, 1, 1, 7],
        [1, -3, -7, 21],
        [1, 1, -1, -1],
        [1, 2, 3, -5],
        [3, 5, 7, 11],
    ] {
        let c = q(&xs);
        let f = emit_anisotropy_formula(&c, Some(&consts)).unwrap();
        let got = sentence_value(&f, &ev);
        let expect = anisotropic(GlobalField::Rationals, &c);
        assert_ne!(got, Tri::Undetermined, "{xs:?}");
        assert_eq!(got == Tri::True, expect, "{xs:?}");
    }
}

#[test]
fn isotropy_system_finds_zeros() {
    let ev = SemanticEvaluator::new(None);
    let f = emit_isotropy_system(&q(&[1, 1, -2])).unwrap();
    assert_eq!(sentence_value(&f, &ev), Tri::True);
    let f = emit_isotropy_system(&q(&[1, 1, 1])).unwrap();
    // over Q the positive form has no zero; the bounded search cannot prove it
    assert_eq!(sentence_value(&f, &ev), Tri::Undetermined);
}

#[test]
fn emitted_systems_flatten_and_round_trip() {
    let q_ = GlobalField::Rationals;
    for f in [
        emit_isotropy_system(&q(&[1, 2, -3])).unwrap(),
        emit_t_membership(&q_.int(-1), &q_.int(-1)).unwrap(),
    ] {
        assert_eq!(Formula::parse(q_, &f.to_sexpr()).unwrap(), f);
        let g = flatten(&f).unwrap();
        assert_eq!(g.params, f.params);
    }
    let consts = bundled_constants(q_).unwrap();
    let f = emit_anisotropy_formula(&q(&[1, 1, 1, 7]), Some(&consts)).unwrap();
    assert_eq!(Formula::parse(q_, &f.to_sexpr()).unwrap(), f);
}
