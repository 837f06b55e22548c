use heckoid::decide::{classify, is_peripheral, is_torsion, LoopKind};
use heckoid::farey::{gamma_infinity_generator, in_orbit_of_infinity, normalize, parabolic_generator, HeckoidContext};
use heckoid::kleinian::{solve_representations, trace_of_slope, trace_polynomial};
use heckoid::presentation::{
    check_corollary_patterns, recover_slope, reduced_slope, relator, riley_word, s1_s2_decomposition,
    slope_cyclic_s_sequence, slope_s_sequence, t_sequence, CorollaryBranch,
};
use heckoid::rational::{canonicalize_slope, from_continued_fraction, to_continued_fraction};
use heckoid::smallcancel::{
    bounded_conjugacy_search, dehn_reduce, min_piece_count, symmetrize, verify_c, verify_t4, ConjugacySearch,
};
use heckoid::word::{contains_subsequence, CyclicSSequence};
use heckoid::{ContinuedFraction, Slope, Word};

fn sl(s: &str) -> Slope {
    s.parse().unwrap()
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn cf(t: &[u64]) -> ContinuedFraction {
    ContinuedFraction::new(t.to_vec()).unwrap()
}

#[test]
fn continued_fractions() {
    assert_eq!(to_continued_fraction(&sl("1")).unwrap().terms(), [1]);
    assert_eq!(from_continued_fraction(&cf(&[2, 2])), sl("2/5"));
    assert_eq!(from_continued_fraction(&cf(&[1])), sl("1"));
    assert!(ContinuedFraction::new(vec![2, 1]).is_err());
    assert!(to_continued_fraction(&Slope::infinity()).is_err());
}

#[test]
fn canonical_slopes() {
    for (input, out) in [("7/5", "2/5"), ("-3/10", "3/10"), ("1/3", "1/3")] {
        let c = canonicalize_slope(&sl(input));
        assert_eq!(c.output, sl(out));
        assert_eq!(c.replay(), c.output);
    }
}

#[test]
fn riley_words() {
    assert_eq!(riley_word(&sl("1/2")).unwrap().word, w("abAB"));
    assert_eq!(riley_word(&sl("1/3")).unwrap().word, w("abaBAB"));
    assert!(riley_word(&Slope::infinity()).unwrap().word.is_empty());
    assert!(riley_word(&sl("3/2")).is_err());
}

#[test]
fn slope_sequences() {
    for m in 2..8 {
        let r = Slope::new(1, m).unwrap();
        assert_eq!(slope_s_sequence(&r).unwrap().0, vec![m as usize; 2]);
        let d = s1_s2_decomposition(&r).unwrap();
        assert!(d.s1.is_empty());
        assert_eq!(d.s2, vec![m as usize]);
    }
    assert_eq!(slope_cyclic_s_sequence(&sl("8/35")).unwrap().len(), 16);
    assert_eq!(t_sequence(&sl("[2,5]")).unwrap().0, [4, 4]);
    assert!(t_sequence(&sl("1/4")).is_err());
    assert_eq!(reduced_slope(&sl("[2,5]")).unwrap(), sl("[4]"));
    assert_eq!(reduced_slope(&sl("[2,1,5]")).unwrap(), sl("[5]"));
    assert_eq!(reduced_slope(&sl("10/37")).unwrap(), sl("[2,3]"));
    assert_eq!(slope_cyclic_s_sequence(&sl("[2,3]")).unwrap(), CyclicSSequence(vec![3, 2, 2, 3, 2, 2]));
}

#[test]
fn slope_recovery() {
    for s in ["10/37", "8/35", "1/5", "3/7"] {
        assert_eq!(recover_slope(&slope_cyclic_s_sequence(&sl(s)).unwrap()).unwrap(), sl(s));
    }
    assert!(recover_slope(&CyclicSSequence(vec![3, 2, 1, 2])).is_err());
}

#[test]
fn corollary_branches() {
    let r = check_corollary_patterns(&sl("[2,1,5]")).unwrap();
    assert_eq!((r.branch, r.pattern, r.holds), (CorollaryBranch::M2One, vec![3, 3], true));
    let r = check_corollary_patterns(&sl("[2,5]")).unwrap();
    assert_eq!((r.branch, r.pattern, r.holds), (CorollaryBranch::M2AtLeastTwo, vec![2, 2], true));
    assert_eq!(check_corollary_patterns(&sl("[3,2]")).unwrap().branch, CorollaryBranch::Exempt);
    assert_eq!(s1_s2_decomposition(&sl("[2,1,5]")).unwrap().s1, vec![3; 5]);
}

#[test]
fn presentations() {
    let p = relator(&sl("1/3"), 2).unwrap();
    assert_eq!(p.relator.len(), 12);
    assert!(p.relator.is_cyclically_reduced());
    assert!(relator(&sl("0"), 2).is_err());
    assert!(relator(&sl("1/3"), 1).is_err());
}

#[test]
fn subsequences() {
    let cs = slope_cyclic_s_sequence(&sl("10/37")).unwrap();
    assert!(contains_subsequence(&cs, &[3, 4, 4, 4, 3]));
    assert!(!contains_subsequence(&cs, &[3, 3]));
}

#[test]
fn farey_examples() {
    assert_eq!(gamma_infinity_generator(0).apply(&sl("1/3")), sl("-1/3"));
    assert_eq!(gamma_infinity_generator(1).apply(&sl("1/4")), sl("7/4"));
    assert!(gamma_infinity_generator(0).compose(&gamma_infinity_generator(0)).is_identity());
    let ctx = HeckoidContext::new(&sl("1/2"), 2).unwrap();
    assert_eq!((ctx.intervals.r1.clone(), ctx.intervals.r2.clone()), (sl("2/5"), sl("2/3")));
    assert!(ctx.intervals.contains(&Slope::zero()) && !ctx.intervals.contains(&sl("2/5")));
    for p in 2..8 {
        for n in 2..5u64 {
            let r = Slope::new(1, p).unwrap();
            let ctx = HeckoidContext::new(&r, n).unwrap();
            assert_eq!(ctx.intervals.r1, sl(&format!("[{p},{}]", 2 * n - 2)));
            assert_eq!(ctx.intervals.r2, sl(&format!("[{},2]", p - 1)));
            let par = parabolic_generator(&r, n).unwrap();
            assert_eq!(par.apply(&ctx.intervals.r1), ctx.intervals.r2);
            assert_eq!(par.apply(&r), r);
        }
    }
    assert!(parabolic_generator(&sl("2"), 2).is_err());
    let ctx = HeckoidContext::new(&sl("3/10"), 2).unwrap();
    assert_eq!(normalize(&sl("1/4"), &ctx).unwrap().s0, sl("1/4"));
    assert_eq!(normalize(&sl("7/4"), &ctx).unwrap().s0, sl("1/4"));
    let g = ctx.parabolic.compose(&gamma_infinity_generator(1));
    assert!(in_orbit_of_infinity(&g.apply(&Slope::infinity()), &ctx).unwrap());
    assert!(!in_orbit_of_infinity(&sl("1/4"), &ctx).unwrap());
}

#[test]
fn small_cancellation_examples() {
    for (r, n) in [("2/5", 2), ("1/3", 3), ("1/2", 2), ("3/10", 2)] {
        let set = symmetrize(&relator(&sl(r), n).unwrap());
        assert!(verify_c(&set, 4 * n).holds, "{r}");
        assert!(verify_t4(&set).holds, "{r}");
        assert!(min_piece_count(&relator(&sl(r), n).unwrap().relator, &set).unwrap().unwrap() >= 4 * n);
    }
    let set = symmetrize(&relator(&sl("1/2"), 2).unwrap());
    assert_eq!(set.len(), 8);
    assert_eq!(min_piece_count(&w("a"), &set).unwrap(), Some(1));
    assert!(min_piece_count(&w("aa"), &set).is_err());
    let u = riley_word(&sl("1/4")).unwrap().word;
    assert!(!dehn_reduce(&u, &set).trivial);
    let shifted = u.rotate(3);
    match bounded_conjugacy_search(&u, &shifted, &set, 3, 1000).unwrap() {
        ConjugacySearch::Found { conjugator, .. } => {
            let back = conjugator.mul(&u).mul(&conjugator.inverse());
            assert!(dehn_reduce(&back.mul(&shifted.inverse()), &set).trivial);
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        bounded_conjugacy_search(&u, &u, &set, 0, 10).unwrap(),
        ConjugacySearch::Found { searched: 1, .. }
    ));
    assert!(bounded_conjugacy_search(&u, &u.inverse(), &set, 6, 20).is_err());
}

#[test]
fn kleinian_examples() {
    assert_eq!(trace_polynomial(&sl("0")).unwrap().to_string(), "w + 2");
    let reps = solve_representations(&sl("1/2"), 3, 1e-8).unwrap();
    assert_eq!(reps.representations.len(), 2);
    for rep in &reps.representations {
        assert!((rep.omega.norm() - 1.0).abs() < 1e-12 && rep.omega.re.abs() < 1e-12);
    }
    let reps = solve_representations(&sl("1/2"), 2, 1e-8).unwrap();
    for rep in &reps.representations {
        assert!((trace_of_slope(&Slope::infinity(), rep).unwrap().re - 2.0).abs() < 1e-12);
        let t0 = trace_of_slope(&Slope::zero(), rep).unwrap();
        assert!((t0.re - 2.0).abs() < 1e-12 && (t0.im.abs() - 2f64.sqrt()).abs() < 1e-12);
        let tr = trace_of_slope(&sl("1/2"), rep).unwrap();
        assert!((tr - rep.target_trace).norm() < 1e-12);
    }
}

#[test]
fn decision_examples() {
    let ctx = HeckoidContext::new(&sl("1/3"), 2).unwrap();
    assert_eq!(classify(&Slope::infinity(), &ctx).unwrap().kind, LoopKind::Trivial);
    assert_eq!(classify(&sl("1/3"), &ctx).unwrap().kind, LoopKind::TorsionCore);
    assert_eq!(is_peripheral(&sl("1/3"), &ctx).unwrap().holds, Some(false));
    assert_eq!(is_torsion(&sl("1/4"), &ctx).unwrap().holds, Some(false));
}
