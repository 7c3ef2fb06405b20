use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sundial_core::castelnuovo::{
    bidegree_dimension, check_inequality, random_points_system, BidegreeComponent, BidegreeSystem,
    Hyperplane, Hypersurface,
};
use sundial_core::expectations::{binomial, forms_dimension};
use sundial_core::geometry::{
    degeneration_fiber, make_generic_sundial, random_line, random_p1_point, random_point, Line,
    ProjectivePoint,
};
use sundial_core::gfp::{rank, DenseMatrix, Echelon};
use sundial_core::monomial::MonomialBasis;
use sundial_core::scheme::{hilbert_function, ConditionBuilder, LineSampling};
use sundial_core::{ideal_dimension, Error, Fp, Prime, Scheme, SchemeComponent};

fn prime() -> Prime {
    Prime::default()
}

fn small_prime() -> Prime {
    Prime::new(101).unwrap()
}

fn random_matrix(rows: usize, cols: usize, p: Prime, rng: &mut ChaCha8Rng) -> DenseMatrix {
    let entries = (0..rows * cols).map(|_| p.random(rng)).collect();
    DenseMatrix::new(rows, cols, entries).unwrap()
}

fn transpose(m: &DenseMatrix) -> DenseMatrix {
    let mut t = DenseMatrix::zeros(m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            t.set(j, i, m.get(i, j));
        }
    }
    t
}

/// Exponent vectors of degree `d` in `n + 1` variables, by brute force.
fn brute_force_monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n + 1];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    rec(0, d, &mut cur, &mut out);
    out
}

fn monomial_value(exps: &[u32], x: &[Fp], p: Prime) -> Fp {
    exps.iter()
        .zip(x)
        .fold(Fp::ONE, |acc, (&e, &v)| p.mul(acc, p.pow(v, e as u64)))
}

fn generic_scheme(
    n: usize,
    sundials: usize,
    lines: usize,
    p: Prime,
    rng: &mut ChaCha8Rng,
) -> Scheme {
    let mut x = Scheme::new(n);
    for _ in 0..sundials {
        x.push(SchemeComponent::Sundial(
            make_generic_sundial(n, p, rng).unwrap(),
        ))
        .unwrap();
    }
    for _ in 0..lines {
        x.push(SchemeComponent::Line(random_line(n, p, rng)))
            .unwrap();
    }
    x
}

fn point_on(l: &Line, p: Prime, rng: &mut ChaCha8Rng) -> ProjectivePoint {
    l.point_at(p.random(rng), p)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn rank_is_bounded_and_transpose_invariant(seed in any::<u64>(), rows in 1usize..9, cols in 1usize..9) {
        let p = small_prime();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(rows, cols, p, &mut rng);
        let r = rank(&m, p);
        prop_assert!(r <= rows.min(cols));
        prop_assert_eq!(r, rank(&transpose(&m), p));
        prop_assert_eq!(r, rank(&m.stack(&m).unwrap(), p));
        let mut ech = Echelon::new(cols, p);
        for row in m.row_iter() {
            ech.insert(row);
        }
        prop_assert_eq!(ech.rank(), r);
    }

    #[test]
    fn rank_of_product_is_at_most_inner_dimension(seed in any::<u64>(), k in 1usize..4) {
        let p = small_prime();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(6, k, p, &mut rng);
        let b = random_matrix(k, 6, p, &mut rng);
        let mut prod = DenseMatrix::zeros(6, 6);
        for i in 0..6 {
            for j in 0..6 {
                let v = (0..k).fold(Fp::ZERO, |acc, t| p.add(acc, p.mul(a.get(i, t), b.get(t, j))));
                prod.set(i, j, v);
            }
        }
        prop_assert!(rank(&prod, p) <= k);
    }

    #[test]
    fn monomial_basis_matches_enumeration(n in 1usize..6, d in 0u32..7) {
        let basis = MonomialBasis::new(n, d).unwrap();
        let mut expected = brute_force_monomials(n, d);
        prop_assert_eq!(basis.len() as u64, binomial(n as u64 + d as u64, n as u64).unwrap());
        prop_assert_eq!(basis.len(), expected.len());
        let mut got: Vec<Vec<u32>> = basis.iter().map(<[u32]>::to_vec).collect();
        got.sort();
        expected.sort();
        prop_assert_eq!(got, expected);
        for j in 0..basis.len() {
            prop_assert_eq!(basis.index_of(basis.exponent(j)), Some(j));
        }
    }

    #[test]
    fn evaluation_is_homogeneous(seed in any::<u64>(), n in 1usize..5, d in 0u32..6) {
        let p = prime();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = MonomialBasis::new(n, d).unwrap();
        let x: Vec<Fp> = (0..=n).map(|_| p.random(&mut rng)).collect();
        let lambda = p.random_nonzero(&mut rng);
        let scaled: Vec<Fp> = x.iter().map(|&v| p.mul(lambda, v)).collect();
        let row = basis.evaluation_row(&x, p).unwrap();
        let row_scaled = basis.evaluation_row(&scaled, p).unwrap();
        let factor = p.pow(lambda, d as u64);
        for (j, exps) in basis.iter().enumerate() {
            prop_assert_eq!(row[j], monomial_value(exps, &x, p));
            prop_assert_eq!(row_scaled[j], p.mul(factor, row[j]));
        }
    }

    #[test]
    fn derivative_is_linear_and_satisfies_euler(seed in any::<u64>(), n in 1usize..5, d in 1u32..6) {
        let p = prime();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = MonomialBasis::new(n, d).unwrap();
        let rand_vec = |rng: &mut ChaCha8Rng| (0..=n).map(|_| p.random(rng)).collect::<Vec<Fp>>();
        let (x, u, w) = (rand_vec(&mut rng), rand_vec(&mut rng), rand_vec(&mut rng));
        let (a, b) = (p.random(&mut rng), p.random(&mut rng));
        let mix: Vec<Fp> = u.iter().zip(&w).map(|(&s, &t)| p.add(p.mul(a, s), p.mul(b, t))).collect();
        let du = basis.derivative_row(&x, &u, p).unwrap();
        let dw = basis.derivative_row(&x, &w, p).unwrap();
        let dmix = basis.derivative_row(&x, &mix, p).unwrap();
        for j in 0..basis.len() {
            prop_assert_eq!(dmix[j], p.add(p.mul(a, du[j]), p.mul(b, dw[j])));
        }
        // Euler: the derivative along x itself is d times the value
        let euler = basis.derivative_row(&x, &x, p).unwrap();
        let value = basis.evaluation_row(&x, p).unwrap();
        let dd = p.element(d as u64);
        for j in 0..basis.len() {
            prop_assert_eq!(euler[j], p.mul(dd, value[j]));
        }
    }

    #[test]
    fn single_components_have_expected_hilbert_function(seed in any::<u64>(), n in 3usize..6, d in 1u32..9) {
        let p = prime();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = forms_dimension(n, d).unwrap() as usize;
        let sundial = SchemeComponent::Sundial(make_generic_sundial(n, p, &mut rng).unwrap());
        let l = random_line(n, p, &mut rng);
        let m = Line::through(l.first(), &random_point(n, p, &mut rng), p).unwrap();
        let conic = SchemeComponent::conic(l.clone(), m, p).unwrap();
        let hf = |comp: SchemeComponent| hilbert_function(&Scheme::from_components(n, [comp]).unwrap(), d, p).unwrap();
        prop_assert_eq!(hf(sundial), c.min(2 * (d as usize + 1)));
        prop_assert_eq!(hf(conic), c.min(2 * d as usize + 1));
        prop_assert_eq!(hf(SchemeComponent::Line(l)), d as usize + 1);
        prop_assert_eq!(hf(SchemeComponent::SimplePoint(random_point(n, p, &mut rng))), 1);
    }

    #[test]
    fn line_sampling_does_not_change_the_rank(seed in any::<u64>(), n in 3usize..5, d in 1u32..6, s in 0usize..3, l in 0usize..4) {
        let p = prime();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = generic_scheme(n, s, l, p, &mut rng);
        let standard = ConditionBuilder::new(n, d, p).unwrap().hilbert_function(&x).unwrap();
        let seeded = ConditionBuilder::new(n, d, p)
            .unwrap()
            .with_line_sampling(LineSampling::Seeded(seed ^ 0x5a5a))
            .hilbert_function(&x)
            .unwrap();
        prop_assert_eq!(standard, seeded);
    }

    #[test]
    fn hilbert_function_is_monotone_under_inclusion(seed in any::<u64>(), n in 3usize..5, d in 1u32..6, s in 0usize..3, l in 0usize..3) {
        let p = prime();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = generic_scheme(n, s, l, p, &mut rng);
        let y = x.union(&generic_scheme(n, 1, 1, p, &mut rng)).unwrap();
        prop_assert!(hilbert_function(&x, d, p).unwrap() <= hilbert_function(&y, d, p).unwrap());
        prop_assert!(ideal_dimension(&x, d, p).unwrap() >= ideal_dimension(&y, d, p).unwrap());
    }

    #[test]
    fn degeneration_is_flat(seed in any::<u64>(), n in 3usize..5, d in 1u32..7) {
        let p = prime();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (l1, m) = (random_line(n, p, &mut rng), random_line(n, p, &mut rng));
        let special = ideal_dimension(&degeneration_fiber(&l1, &m, Fp::ZERO, p).unwrap(), d, p).unwrap();
        let general = ideal_dimension(&degeneration_fiber(&l1, &m, p.random_nonzero(&mut rng), p).unwrap(), d, p).unwrap();
        prop_assert!(special >= general);
        prop_assert_eq!(special, general);
        let c = forms_dimension(n, d).unwrap() as usize;
        prop_assert_eq!(general, c.saturating_sub(2 * (d as usize + 1)));
    }

    #[test]
    fn castelnuovo_inequality_on_random_hyperplanes(seed in any::<u64>(), n in 3usize..5, d in 2u32..6, s in 0usize..3, l in 0usize..3) {
        let p = prime();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = generic_scheme(n, s, l, p, &mut rng);
        let report = loop {
            let h = Hyperplane::random(n, p, &mut rng);
            match check_inequality(&x, &Hypersurface::Hyperplane(h), d, p) {
                Err(Error::UnrecognizedPosition(_)) => continue,
                r => break r.unwrap(),
            }
        };
        prop_assert!(report.inequality_holds);
        prop_assert_eq!(report.dim_x_d, ideal_dimension(&x, d, p).unwrap());
    }

    #[test]
    fn fixed_ruling_lines_can_be_removed(seed in any::<u64>(), k in 1u32..4, extra in 0u32..4, b in 1u32..7, points in 0usize..12, doubles in 0usize..3) {
        let p = prime();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = k + extra;
        let base = random_points_system(a - k, b, points, doubles, p, &mut rng);
        let mut with_lines = base.in_bidegree(a, b);
        for _ in 0..k {
            with_lines.push(BidegreeComponent::RulingLineA { u: random_p1_point(p, &mut rng) }).unwrap();
        }
        prop_assert_eq!(bidegree_dimension(&with_lines, p).unwrap(), bidegree_dimension(&base, p).unwrap());
    }

    #[test]
    fn bidegree_dimension_of_points(seed in any::<u64>(), a in 0u32..5, b in 0u32..5, points in 0usize..30) {
        let p = prime();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_points_system(a, b, points, 0, p, &mut rng);
        let cols = (a as usize + 1) * (b as usize + 1);
        prop_assert_eq!(bidegree_dimension(&s, p).unwrap(), cols.saturating_sub(points));
        prop_assert_eq!(bidegree_dimension(&BidegreeSystem::new(a, b), p).unwrap(), cols);
    }
}

/// Random lines and sundials with `0 < dim (I_X)_d <= d + 1` and a further
/// line `Y` with `dim (I_{X+Y})_d = 0`.
fn adding_points_instance(seed: u64) -> (Scheme, Line, u32, usize) {
    let p = prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(3..=4usize);
        let d = rng.gen_range(2..=6u32);
        let c = forms_dimension(n, d).unwrap() as usize;
        let per = d as usize + 1;
        let s = rng.gen_range(0..=(c / (2 * per)));
        let rest = c - 2 * s * per;
        if rest == 0 {
            continue;
        }
        let l = (rest - 1) / per;
        let x = generic_scheme(n, s, l, p, &mut rng);
        let y = random_line(n, p, &mut rng);
        let dim = ideal_dimension(&x, d, p).unwrap();
        return (x, y, d, dim);
    }
}

#[test]
fn adding_generic_points_on_a_line() {
    let p = prime();
    for seed in 0..25u64 {
        let (x, y, d, dim) = adding_points_instance(seed);
        assert!(dim > 0 && dim <= d as usize + 1, "seed {seed}: dim {dim}");
        let xy = x
            .union(
                &Scheme::from_components(x.ambient_n(), [SchemeComponent::Line(y.clone())])
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(ideal_dimension(&xy, d, p).unwrap(), 0, "seed {seed}");
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let mut with_points = x.clone();
        for _ in 0..dim {
            with_points
                .push(SchemeComponent::SimplePoint(point_on(&y, p, &mut rng)))
                .unwrap();
        }
        assert_eq!(
            ideal_dimension(&with_points, d, p).unwrap(),
            0,
            "seed {seed}"
        );
    }
}

#[test]
fn sundial_rank_over_seeds() {
    let p = prime();
    for n in 3..=5usize {
        for d in 1..=8u32 {
            let c = forms_dimension(n, d).unwrap() as usize;
            for seed in 0..20u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let x = generic_scheme(n, 1, 0, p, &mut rng);
                assert_eq!(
                    hilbert_function(&x, d, p).unwrap(),
                    c.min(2 * (d as usize + 1)),
                    "n {n} d {d} seed {seed}"
                );
            }
        }
    }
}
