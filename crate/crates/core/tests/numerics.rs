//! Cross-checks between the three evaluation paths and the residual algebra.

use jones_asymptotics::asymptotics::{complex, eval_scaled_jones, loop_term, residual, EvalPath, KnotContext};
use jones_asymptotics::jones::colored_jones_numeric;
use jones_asymptotics::pipeline::KnotRecord;
use jones_asymptotics::precision::eval_complex;
use jones_asymptotics::{BraidWord, Error, MirrorConvention, PrecisionComplex};
use proptest::prelude::*;

const STD: MirrorConvention = MirrorConvention::Standard;
const PREC: u32 = 160;

fn context(b: &BraidWord, colors: u32, k_max: usize, loops: Option<usize>) -> KnotContext {
    let rec = KnotRecord::compute(b, colors, STD).unwrap();
    let c = rec.cyclotomic(k_max).unwrap();
    let data = loops.map(|l| {
        let (data, _, recs) = rec.loop_data(colors as usize - 3, l).unwrap();
        assert!(recs.iter().all(|r| r.is_ok()));
        data
    });
    rec.context(Some(c), data, PREC)
}

#[test]
fn numeric_state_sum_matches_exact_for_figure_eight() {
    let b = BraidWord::figure_eight();
    let q0 = complex((0.0, 0.05 / 5.0), PREC).exp();
    let exact = eval_complex(&jones_asymptotics::colored_jones(&b, 5, STD).unwrap(), &q0).unwrap();
    let numeric = colored_jones_numeric(&b, 5, &q0, STD).unwrap();
    assert!(numeric.within(&exact, 1e-20).unwrap());
}

#[test]
fn three_paths_agree_up_to_thirteen() {
    let ctx = context(&BraidWord::three_twist(), 13, 12, None);
    for a in [(0.01, 0.05), (0.0, 0.3), (-0.2, 0.1)] {
        let alpha = complex(a, PREC);
        for n in [1, 2, 5, 9, 13] {
            let e = eval_scaled_jones(&ctx, &alpha, n, EvalPath::ExactPoly).unwrap();
            let c = eval_scaled_jones(&ctx, &alpha, n, EvalPath::Cyclotomic).unwrap();
            let s = eval_scaled_jones(&ctx, &alpha, n, EvalPath::NumericSum).unwrap();
            assert!(e.within(&c, 1e-25).unwrap(), "{a:?} n = {n}");
            assert!(e.within(&s, 1e-25).unwrap(), "{a:?} n = {n}");
        }
    }
}

#[test]
fn residuals_telescope() {
    let ctx = context(&BraidWord::trefoil(), 16, 12, Some(1));
    for a in [(0.0, 0.05), (0.03, 0.02)] {
        let alpha = complex(a, PREC);
        for n in [20, 100, 400] {
            let r0 = residual(&ctx, &alpha, n, 0, EvalPath::Cyclotomic).unwrap();
            let r1 = residual(&ctx, &alpha, n, 1, EvalPath::Cyclotomic).unwrap();
            let nn = PrecisionComplex::from_f64(n as f64, 0.0, PREC);
            let scale = nn.div(&alpha).unwrap();
            let step = r0.sub(&loop_term(ctx.loops.as_ref().unwrap(), 0, &alpha).unwrap()).mul(&scale);
            let tol = 1e-12 * r1.abs_f64().max(1e-30);
            assert!(r1.within(&step, tol).unwrap(), "{a:?} n = {n}");
        }
    }
}

#[test]
fn certification_is_monotone_along_rays() {
    for b in [BraidWord::trefoil(), BraidWord::three_twist()] {
        let ctx = context(&b, 13, 12, None);
        for dir in [(0.0, 1.0), (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2), (1.0, 0.0)] {
            let ts = [0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 3.0, 5.0];
            let flags: Vec<bool> = ts
                .iter()
                .map(|&t| {
                    let alpha = complex((t * dir.0, t * dir.1), PREC);
                    match eval_scaled_jones(&ctx, &alpha, 200, EvalPath::Cyclotomic) {
                        Ok(_) => true,
                        Err(Error::TailNotCertified { .. }) => false,
                        Err(e) => panic!("{e}"),
                    }
                })
                .collect();
            assert!(flags[0], "{b} {dir:?}");
            let first_fail = flags.iter().position(|f| !f).unwrap_or(flags.len());
            assert!(flags[first_fail..].iter().all(|f| !f), "{b} {dir:?}: {flags:?}");
        }
    }
}

#[test]
fn small_angle_limit_is_inverse_alexander() {
    let ctx = context(&BraidWord::figure_eight(), 13, 12, None);
    let alpha = complex((0.0, 0.05), PREC);
    let j = eval_scaled_jones(&ctx, &alpha, 3200, EvalPath::Cyclotomic).unwrap();
    let target = eval_complex(&ctx.delta, &alpha.exp()).unwrap().recip().unwrap();
    assert!(j.within(&target, 1e-3).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn paths_agree_at_random_small_angles(re in -0.3f64..0.3, im in -0.3f64..0.3, n in 1u32..=8) {
        prop_assume!(re != 0.0 || im != 0.0);
        let ctx = trefoil_ctx();
        let alpha = complex((re, im), PREC);
        let e = eval_scaled_jones(ctx, &alpha, n, EvalPath::ExactPoly).unwrap();
        let c = eval_scaled_jones(ctx, &alpha, n, EvalPath::Cyclotomic).unwrap();
        let s = eval_scaled_jones(ctx, &alpha, n, EvalPath::NumericSum).unwrap();
        prop_assert!(e.within(&c, 1e-25).unwrap());
        prop_assert!(e.within(&s, 1e-25).unwrap());
    }
}

fn trefoil_ctx() -> &'static KnotContext {
    static CTX: std::sync::OnceLock<KnotContext> = std::sync::OnceLock::new();
    CTX.get_or_init(|| context(&BraidWord::trefoil(), 8, 7, None))
}
