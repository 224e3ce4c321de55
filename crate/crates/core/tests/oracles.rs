//! Independent oracles for the exact invariants: a Kauffman bracket state
//! sum for n = 2, Fox calculus on the Wirtinger presentation for Δ, and
//! invariance under Markov moves and mirroring.

use jones_asymptotics::alexander::{alexander, normalize_alexander};
use jones_asymptotics::jones::colored_jones_reference;
use jones_asymptotics::rational::interpolate_exact;
use jones_asymptotics::rug::Rational;
use jones_asymptotics::{colored_jones, BraidWord, LaurentPolynomial, MirrorConvention};
use proptest::prelude::*;

const STD: MirrorConvention = MirrorConvention::Standard;

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut x = x;
    while parent[x] != r {
        let next = parent[x];
        parent[x] = r;
        x = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (a, b) = (find(parent, a), find(parent, b));
    parent[a] = b;
}

/// Loops in the closure after smoothing every crossing; `vertical[j]` keeps
/// the two strands of crossing `j` running through.
fn loops(braid: &BraidWord, vertical: &[bool]) -> usize {
    let s = braid.strands();
    let c = braid.letters().len();
    let node = |level: usize, p: usize| (level % c) * s + p;
    let mut parent: Vec<usize> = (0..c * s).collect();
    for (j, &l) in braid.letters().iter().enumerate() {
        let i = l.unsigned_abs() as usize - 1;
        for p in 0..s {
            if p != i && p != i + 1 {
                union(&mut parent, node(j, p), node(j + 1, p));
            }
        }
        if vertical[j] {
            union(&mut parent, node(j, i), node(j + 1, i));
            union(&mut parent, node(j, i + 1), node(j + 1, i + 1));
        } else {
            union(&mut parent, node(j, i), node(j, i + 1));
            union(&mut parent, node(j + 1, i), node(j + 1, i + 1));
        }
    }
    (0..c * s).filter(|&x| find(&mut parent, x) == x).count()
}

/// Jones polynomial `V(t)` from the Kauffman bracket in `A`, `t = A^{-4}`.
fn kauffman_jones(braid: &BraidWord) -> LaurentPolynomial {
    let c = braid.letters().len();
    let d = LaurentPolynomial::from_terms([(2, -1), (-2, -1)]);
    let mut bracket = LaurentPolynomial::zero();
    for mask in 0u32..1 << c {
        // bit set: A-smoothing at that crossing
        let mut a_minus_b = 0i64;
        let mut vertical = Vec::with_capacity(c);
        for (j, &l) in braid.letters().iter().enumerate() {
            let a = mask >> j & 1 == 1;
            a_minus_b += if a { 1 } else { -1 };
            // the A-smoothing of a positive braid crossing keeps the strands vertical
            vertical.push(a == (l > 0));
        }
        let term = &LaurentPolynomial::monomial(a_minus_b, 1) * &d.pow(loops(braid, &vertical) as u32 - 1);
        bracket = &bracket + &term;
    }
    let w = braid.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let f = &LaurentPolynomial::monomial(-3 * w, sign) * &bracket;
    LaurentPolynomial::from_terms(f.terms().map(|(e, c)| {
        assert_eq!(e % 4, 0, "bracket exponent {e}");
        (-e / 4, c.clone())
    }))
}

/// Δ from Fox derivatives of the Wirtinger relations, each row scaled to be
/// polynomial in `t`, with the determinant interpolated at integer points.
fn fox_alexander(braid: &BraidWord) -> LaurentPolynomial {
    let s = braid.strands();
    let c = braid.letters().len();
    let mut pos: Vec<usize> = (0..s).collect();
    let mut arcs = s;
    // (over, under_in, under_out, sign) per crossing
    let mut rel = Vec::new();
    for &l in braid.letters() {
        let i = l.unsigned_abs() as usize - 1;
        let (over, under) = if l > 0 { (pos[i], pos[i + 1]) } else { (pos[i + 1], pos[i]) };
        let new = arcs;
        arcs += 1;
        rel.push((over, under, new, l > 0));
        if l > 0 {
            pos[i] = new;
            pos[i + 1] = over;
        } else {
            pos[i] = over;
            pos[i + 1] = new;
        }
    }
    let mut parent: Vec<usize> = (0..arcs).collect();
    for p in 0..s {
        union(&mut parent, pos[p], p);
    }
    let mut classes: Vec<usize> = (0..arcs).map(|a| find(&mut parent, a)).collect();
    let mut ids = classes.clone();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), c, "a knot diagram has as many arcs as crossings");
    for a in classes.iter_mut() {
        *a = ids.binary_search(a).unwrap();
    }

    let det_at = |t: &Rational| -> Rational {
        let mut m = vec![vec![Rational::new(); c]; c];
        for (r, &(o, u, n, positive)) in rel.iter().enumerate() {
            // x_n = x_o x_u x_o^{-1} (or the inverse conjugation), times t if needed
            let (dox, dux, dnx) = if positive {
                (Rational::from(1 - t.clone()), t.clone(), Rational::from(-1))
            } else {
                (Rational::from(t.clone() - 1), Rational::from(1), Rational::from(-t.clone()))
            };
            m[r][classes[o]] += dox;
            m[r][classes[u]] += dux;
            m[r][classes[n]] += dnx;
        }
        // delete the last row and column
        let k = c - 1;
        let mut a: Vec<Vec<Rational>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        let mut det = Rational::from(1);
        for col in 0..k {
            let Some(p) = (col..k).find(|&r| a[r][col] != 0) else {
                return Rational::new();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            det *= &a[col][col];
            for r in col + 1..k {
                let f = Rational::from(&a[r][col] / &a[col][col]);
                for j in col..k {
                    let sub = Rational::from(&f * &a[col][j]);
                    a[r][j] -= sub;
                }
            }
        }
        det
    };
    if c == 1 {
        return LaurentPolynomial::one();
    }
    let xs: Vec<Rational> = (0..=c as i64).map(|i| Rational::from(i + 2)).collect();
    let ys: Vec<Rational> = xs.iter().map(det_at).collect();
    let coeffs = interpolate_exact(&xs, &ys);
    normalize_alexander(&LaurentPolynomial::from_dense(0, coeffs)).unwrap()
}

fn knot_braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4)
        .prop_flat_map(|s| {
            let letter = (1..s as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
            (Just(s), prop::collection::vec(letter, 1..9))
        })
        .prop_filter_map("closure must be a knot", |(s, w)| BraidWord::new(s, w).ok())
}

#[test]
fn bracket_oracle_anchor() {
    // σ₁³ closes to the right-handed trefoil, V = t + t³ − t⁴
    let v = kauffman_jones(&BraidWord::trefoil());
    assert_eq!(v, LaurentPolynomial::from_terms([(1, 1), (3, 1), (4, -1)]));
    assert!(kauffman_jones(&BraidWord::unknot()).is_one());
}

#[test]
fn n2_matches_the_bracket_on_the_catalog() {
    for b in BraidWord::standard_catalog() {
        let j = colored_jones(&b, 2, STD).unwrap();
        assert_eq!(j, kauffman_jones(&b).mirror(), "{b}");
    }
}

#[test]
fn fox_calculus_matches_burau_on_the_catalog() {
    for b in BraidWord::standard_catalog() {
        assert_eq!(alexander(&b).unwrap(), fox_alexander(&b), "{b}");
    }
}

#[test]
fn markov_stabilization() {
    // σ₁³σ₂^{±1} on three strands closes to the trefoil again
    let base = BraidWord::trefoil();
    for last in [2, -2] {
        let stab = BraidWord::new(3, vec![1, 1, 1, last]).unwrap();
        for n in 1..=6 {
            assert_eq!(
                colored_jones(&stab, n, STD).unwrap(),
                colored_jones(&base, n, STD).unwrap(),
                "n = {n}, σ₂^{last:+}"
            );
        }
    }
}

#[test]
fn markov_conjugation() {
    let b = BraidWord::three_twist();
    let mut w = b.letters().to_vec();
    w.rotate_left(2);
    let c = BraidWord::new(3, w).unwrap();
    for n in 2..=5 {
        assert_eq!(colored_jones(&b, n, STD).unwrap(), colored_jones(&c, n, STD).unwrap());
    }
}

#[test]
fn value_at_one_is_one() {
    for b in BraidWord::standard_catalog() {
        for n in 1..=8 {
            assert_eq!(colored_jones(&b, n, STD).unwrap().eval_one(), 1, "{b} n = {n}");
        }
    }
}

#[test]
fn figure_eight_is_palindromic_and_mirror_symmetric() {
    let b = BraidWord::figure_eight();
    for n in 1..=10 {
        let j = colored_jones(&b, n, STD).unwrap();
        assert_eq!(j.mirror(), j, "n = {n}");
        assert_eq!(colored_jones(&b.mirror(), n, STD).unwrap(), j);
    }
}

#[test]
fn convention_flip_is_the_mirror() {
    for b in BraidWord::standard_catalog() {
        for n in 2..=6 {
            let j = colored_jones(&b, n, STD).unwrap();
            assert_eq!(colored_jones(&b, n, MirrorConvention::Mirrored).unwrap(), j.mirror());
            assert_eq!(colored_jones(&b.mirror(), n, STD).unwrap(), j.mirror());
        }
    }
}

#[test]
fn modular_engine_matches_exact_state_sum() {
    for b in BraidWord::standard_catalog() {
        for n in 2..=5 {
            assert_eq!(colored_jones(&b, n, STD).unwrap(), colored_jones_reference(&b, n, STD).unwrap(), "{b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_braids_agree_with_the_bracket(b in knot_braid()) {
        let j = colored_jones(&b, 2, STD).unwrap();
        prop_assert_eq!(j, kauffman_jones(&b).mirror());
    }

    #[test]
    fn random_braids_agree_with_fox_calculus(b in knot_braid()) {
        prop_assert_eq!(alexander(&b).unwrap(), fox_alexander(&b));
    }

    #[test]
    fn random_braids_mirror(b in knot_braid(), n in 2u32..=4) {
        let j = colored_jones(&b, n, STD).unwrap();
        prop_assert_eq!(colored_jones(&b.mirror(), n, STD).unwrap(), j.mirror());
        prop_assert_eq!(j.eval_one(), 1);
    }

    #[test]
    fn random_stabilization(b in knot_braid(), positive in any::<bool>()) {
        let s = b.strands();
        let mut w = b.letters().to_vec();
        w.push(if positive { s as i32 } else { -(s as i32) });
        let stab = BraidWord::new(s + 1, w).unwrap();
        for n in 2..=3 {
            prop_assert_eq!(colored_jones(&stab, n, STD).unwrap(), colored_jones(&b, n, STD).unwrap());
        }
        prop_assert_eq!(alexander(&stab).unwrap(), alexander(&b).unwrap());
    }
}
