use std::collections::BTreeMap;
use std::sync::Arc;

use hecklab::classifier::{
    averaging_norm_estimate, character_certificate, classify_simplicity, classify_spherical_affine,
    find_powers_elements, Verdict,
};
use hecklab::coxeter::{
    default_labels, shuffle_normal_form, sigma_permutation, summand_indices, CoxeterSystem, Exponent,
    FreeAbelianProduct, GroupElement, Letter, SimplicialGraph, SummandIndex, VertexSet, DEFAULT_BALL_CAP,
};
use hecklab::fock::FockSpace;
use hecklab::fock::{
    norm_lower_bound, represent_by_generators, represent_element, vacuum_coefficient, BallBasis, DEFAULT_MAX_ITER,
    DEFAULT_TOLERANCE,
};
use hecklab::hecke::{group_algebra, pi_q1, HeckeAlgebra, HeckeElement, MultiParameter};
use hecklab::khintchine::{block_count_bound, jd_hecke, max_block_count, random_homogeneous};
use hecklab::scalar::ratio;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn k5_plus_f() -> SimplicialGraph {
    let mut edges = Vec::new();
    for u in 0..5 {
        for v in u + 1..5 {
            edges.push((u, v));
        }
    }
    edges.extend([(3, 5), (4, 5)]);
    SimplicialGraph::new(default_labels(6), &edges).unwrap()
}

fn path4() -> SimplicialGraph {
    SimplicialGraph::new(default_labels(4), &[(0, 1), (1, 2), (2, 3)]).unwrap()
}

fn affine_triangle() -> CoxeterSystem {
    let f = Exponent::Finite;
    CoxeterSystem::new(
        default_labels(3),
        vec![vec![f(1), f(3), f(3)], vec![f(3), f(1), f(3)], vec![f(3), f(3), f(1)]],
    )
    .unwrap()
}

/// Systems with at most four generators, right-angled or not.
fn small_systems() -> Vec<CoxeterSystem> {
    vec![
        CoxeterSystem::dihedral(Exponent::Finite(3)).unwrap(),
        CoxeterSystem::dihedral(Exponent::Finite(5)).unwrap(),
        CoxeterSystem::free(3),
        affine_triangle(),
        CoxeterSystem::from_graph(&SimplicialGraph::cycle(4)),
        CoxeterSystem::from_graph(&path4()),
    ]
}

fn exact(sys: &Arc<CoxeterSystem>, q: BigRational) -> Arc<HeckeAlgebra<BigRational>> {
    HeckeAlgebra::new(sys.clone(), MultiParameter::uniform(sys, q).unwrap()).unwrap()
}

fn element<S: hecklab::scalar::Scalar>(
    algebra: &Arc<HeckeAlgebra<S>>,
    ball: &[GroupElement],
    terms: &[(usize, i64)],
) -> HeckeElement<S> {
    HeckeElement::from_terms(
        algebra,
        terms
            .iter()
            .map(|&(i, c)| (ball[i % ball.len()].clone(), S::from_i64(c))),
    )
}

fn terms() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..1000, -5i64..=5), 1..5)
}

fn squares() -> impl Strategy<Value = BigRational> {
    prop::sample::select(vec![ratio(1, 4), ratio(1, 1), ratio(9, 4), ratio(4, 1), ratio(4, 9)])
}

// word problem

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduce_is_a_homomorphism(sys_i in 0usize..6, u in prop::collection::vec(0u8..4, 0..=6), v in prop::collection::vec(0u8..4, 0..=6)) {
        let sys = &small_systems()[sys_i];
        let r = sys.rank() as u8;
        let u: Vec<Letter> = u.into_iter().map(|s| s % r).collect();
        let v: Vec<Letter> = v.into_iter().map(|s| s % r).collect();
        let ru = sys.reduce(&u).unwrap();
        let rv = sys.reduce(&v).unwrap();
        let uv: Vec<Letter> = u.iter().chain(&v).copied().collect();
        prop_assert_eq!(sys.reduce(&uv).unwrap(), sys.multiply(&ru, &rv).unwrap());
        prop_assert_eq!(sys.reduce(ru.word()).unwrap(), ru.clone());
        prop_assert!(sys.is_reduced(ru.word()).unwrap());
    }
}

#[test]
fn length_is_subadditive_with_parity() {
    for sys in [
        CoxeterSystem::free(3),
        affine_triangle(),
        CoxeterSystem::from_graph(&SimplicialGraph::cycle(5)),
    ] {
        let ball = sys.enumerate_ball(4, DEFAULT_BALL_CAP).unwrap();
        let ball: Vec<_> = if ball.len() > 120 {
            ball.into_iter().step_by(3).collect()
        } else {
            ball
        };
        for g in &ball {
            for h in &ball {
                let gh = sys.multiply(g, h).unwrap();
                assert!(gh.len() <= g.len() + h.len());
                assert_eq!(gh.len() % 2, (g.len() + h.len()) % 2);
            }
        }
    }
}

#[test]
fn exchange_condition() {
    for sys in [
        CoxeterSystem::dihedral(Exponent::Finite(4)).unwrap(),
        CoxeterSystem::free(3),
        affine_triangle(),
    ] {
        for g in sys.enumerate_ball(5, DEFAULT_BALL_CAP).unwrap() {
            for s in 0..sys.rank() as Letter {
                let sg = sys.left_mul_gen(s, &g).unwrap();
                if sg.len() == g.len() + 1 {
                    continue;
                }
                let w = g.word();
                let found = (0..w.len()).any(|i| {
                    let mut del = w.to_vec();
                    del.remove(i);
                    sys.reduce(&del).unwrap() == sg
                });
                assert!(found, "exchange fails for {:?} and {s}", w);
            }
        }
    }
}

// rearrangements

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn length_after(sys: &CoxeterSystem, word: &[Letter], s: Letter, left: bool) -> usize {
    let g = sys.reduce(word).unwrap();
    if left {
        sys.left_mul_gen(s, &g)
    } else {
        sys.right_mul_gen(&g, s)
    }
    .unwrap()
    .len()
}

/// Every index for which a permutation satisfies the defining conditions,
/// with the permutations found, by trying all permutations of the word.
fn brute_force_sigma(graph: &SimplicialGraph, word: &[Letter]) -> BTreeMap<SummandIndex, Vec<Vec<usize>>> {
    let sys = CoxeterSystem::from_graph(graph);
    let d = word.len();
    let target = sys.reduce(word).unwrap();
    let is_rep = |seg: &[Letter]| shuffle_normal_form(graph, seg).0 == seg;
    let mut found: BTreeMap<SummandIndex, Vec<Vec<usize>>> = BTreeMap::new();
    for sigma in permutations(d) {
        let moved: Vec<Letter> = sigma.iter().map(|&i| word[i]).collect();
        if sys.reduce(&moved).unwrap() != target {
            continue;
        }
        let order_kept = (0..d).all(|a| (a + 1..d).all(|b| moved[a] != moved[b] || sigma[a] < sigma[b]));
        if !order_kept {
            continue;
        }
        for k in 0..=d {
            for l in 0..=d - k {
                let (head, rest) = moved.split_at(k);
                let (mid, tail) = rest.split_at(l);
                if !is_rep(head) || !is_rep(mid) || !is_rep(tail) {
                    continue;
                }
                let g0 = VertexSet::from_indices(mid.iter().map(|&s| s as usize));
                if g0.len() != l || !graph.is_clique(g0) {
                    continue;
                }
                let link = graph.link(g0);
                let mut g1 = VertexSet::EMPTY;
                let mut g2 = VertexSet::EMPTY;
                let mut ok = true;
                for s in link.iter() {
                    match length_after(&sys, head, s as Letter, false) {
                        x if x + 1 == k => g1.insert(s),
                        x if x == k + 1 => {}
                        _ => ok = false,
                    }
                    match length_after(&sys, tail, s as Letter, true) {
                        x if x + 1 == tail.len() => g2.insert(s),
                        x if x == tail.len() + 1 => {}
                        _ => ok = false,
                    }
                }
                if !ok || !graph.comm(g0).unwrap().contains(&(g1, g2)) {
                    continue;
                }
                found
                    .entry(SummandIndex::new(l, k, g0, g1, g2))
                    .or_default()
                    .push(sigma.clone());
            }
        }
    }
    found
}

fn graphs() -> Vec<SimplicialGraph> {
    vec![
        SimplicialGraph::edgeless(3),
        SimplicialGraph::cycle(5),
        k5_plus_f(),
        path4(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn sigma_agrees_with_brute_force(gi in 0usize..4, raw in prop::collection::vec(0u8..6, 1..=9)) {
        let graph = &graphs()[gi];
        let sys = CoxeterSystem::from_graph(graph);
        let r = sys.rank() as u8;
        let raw: Vec<Letter> = raw.into_iter().map(|s| s % r).collect();
        let v = sys.reduce(&raw).unwrap();
        prop_assume!(!v.is_identity() && v.len() <= 6);
        let word = v.word();
        let oracle = brute_force_sigma(graph, word);
        for (idx, perms) in &oracle {
            prop_assert_eq!(perms.len(), 1, "not unique at {:?}", idx);
        }
        for idx in summand_indices(graph, word.len()) {
            let ours = sigma_permutation(graph, word, &idx).map(|s| s.permutation());
            let expected = oracle.get(&idx).map(|p| p[0].clone());
            prop_assert_eq!(ours, expected, "{:?} at {:?}", word, idx);
        }
    }
}

#[test]
fn sigma_examples_from_the_graph_with_six_vertices() {
    let g = k5_plus_f();
    let word: Vec<Letter> = (0..6).collect();
    let abc = VertexSet::from_indices([0, 1, 2]);
    let de = VertexSet::from_indices([3, 4]);
    let idx = SummandIndex::new(3, 2, abc, de, VertexSet::EMPTY);
    assert_eq!(
        sigma_permutation(&g, &word, &idx).unwrap().permutation(),
        vec![3, 4, 0, 1, 2, 5]
    );
    let idx = SummandIndex::new(
        2,
        2,
        VertexSet::from_indices([0, 1]),
        VertexSet::singleton(3),
        VertexSet::singleton(2),
    );
    assert!(sigma_permutation(&g, &word, &idx).is_none());
    assert!(!brute_force_sigma(&g, &word).contains_key(&idx));
}

// growth

#[test]
fn growth_matches_closed_form_for_small_families() {
    let families: &[&[usize]] = &[
        &[1],
        &[2],
        &[1, 1],
        &[2, 1],
        &[2, 2],
        &[1, 1, 1],
        &[2, 1, 1],
        &[2, 2, 1],
        &[2, 2, 2],
    ];
    let nonzero = |s: &hecklab::coxeter::GrowthSeries| {
        s.coefficients
            .iter()
            .filter(|(_, &c)| c != 0)
            .map(|(a, &c)| (a.clone(), c))
            .collect::<Vec<_>>()
    };
    for blocks in families {
        let fap = FreeAbelianProduct::new(blocks).unwrap();
        let bfs = fap.system().growth_coefficients(10, 6_000_000).unwrap();
        assert_eq!(nonzero(&bfs), nonzero(&fap.taylor_coefficients(10)), "{blocks:?}");
        assert_eq!(bfs.by_length()[0], 1);
    }
}

// Hecke algebra

fn exact_systems() -> Vec<Arc<CoxeterSystem>> {
    vec![
        Arc::new(CoxeterSystem::dihedral(Exponent::Finite(3)).unwrap()),
        Arc::new(CoxeterSystem::free(3)),
        Arc::new(CoxeterSystem::from_graph(&SimplicialGraph::cycle(5))),
        Arc::new(affine_triangle()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_algebra_axioms_exact(si in 0usize..4, q in squares(), x in terms(), y in terms(), z in terms()) {
        let sys = exact_systems()[si].clone();
        let a = exact(&sys, q);
        let ball = sys.enumerate_ball(2, DEFAULT_BALL_CAP).unwrap();
        let (x, y, z) = (element(&a, &ball, &x), element(&a, &ball, &y), element(&a, &ball, &z));
        let xy = x.checked_mul(&y).unwrap();
        prop_assert_eq!(xy.checked_mul(&z).unwrap(), x.checked_mul(&y.checked_mul(&z).unwrap()).unwrap());
        prop_assert_eq!(xy.adjoint(), y.adjoint().checked_mul(&x.adjoint()).unwrap());
        prop_assert_eq!(x.adjoint().adjoint(), x.clone());
        prop_assert_eq!(xy.trace(), y.checked_mul(&x).unwrap().trace());
        let tr = x.adjoint().checked_mul(&x).unwrap().trace();
        prop_assert!(x.is_zero() || tr > BigRational::zero());
    }

    #[test]
    fn traciality_in_float_mode(si in 0usize..4, q in 1.1f64..5.0, x in terms(), y in terms()) {
        let sys = exact_systems()[si].clone();
        let qr = BigRational::from_float(q).unwrap();
        let a = HeckeAlgebra::<Complex64>::new(sys.clone(), MultiParameter::uniform(&sys, qr).unwrap()).unwrap();
        let ball = sys.enumerate_ball(2, DEFAULT_BALL_CAP).unwrap();
        let (x, y) = (element(&a, &ball, &x), element(&a, &ball, &y));
        let lhs = x.checked_mul(&y).unwrap().trace();
        let rhs = y.checked_mul(&x).unwrap().trace();
        prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
    }
}

#[test]
fn pi_q1_is_multiplicative_on_basis_pairs() {
    for g in [
        SimplicialGraph::edgeless(3),
        SimplicialGraph::cycle(4),
        path4(),
        SimplicialGraph::edgeless(2),
    ] {
        let sys = Arc::new(CoxeterSystem::from_graph(&g));
        let group = group_algebra::<BigRational>(&sys);
        let ball = sys.enumerate_ball(2, DEFAULT_BALL_CAP).unwrap();
        for q in [ratio(1, 4), ratio(9, 4), ratio(4, 1)] {
            let target = exact(&sys, q);
            for u in &ball {
                let pu = pi_q1(&HeckeElement::basis(&group, u.clone()), &target).unwrap();
                for v in &ball {
                    let pv = pi_q1(&HeckeElement::basis(&group, v.clone()), &target).unwrap();
                    let uv = HeckeElement::basis(&group, u.clone())
                        .checked_mul(&HeckeElement::basis(&group, v.clone()))
                        .unwrap();
                    assert_eq!(pi_q1(&uv, &target).unwrap(), pu.checked_mul(&pv).unwrap());
                }
            }
        }
    }
}

// matrix representation

#[test]
fn entries_in_the_window_do_not_depend_on_the_radius() {
    let sys = Arc::new(CoxeterSystem::from_graph(&SimplicialGraph::cycle(5)));
    let a = exact(&sys, ratio(9, 4));
    let ball = sys.enumerate_ball(2, DEFAULT_BALL_CAP).unwrap();
    let n = 4;
    let small = BallBasis::new(sys.clone(), n, DEFAULT_BALL_CAP).unwrap();
    let large = BallBasis::new(sys.clone(), n + 2, DEFAULT_BALL_CAP).unwrap();
    for w in &ball {
        let x = HeckeElement::basis(&a, w.clone());
        let m = w.len();
        let ms = represent_by_generators(&x, &small).unwrap();
        let ml = represent_by_generators(&x, &large).unwrap();
        for i in small.window(m) {
            for j in small.window(m) {
                let (u, v) = (small.element(i), small.element(j));
                let (li, lj) = (large.position(u).unwrap(), large.position(v).unwrap());
                assert_eq!(
                    ms.get(i, j),
                    ml.get(li, lj),
                    "{:?} at ({:?}, {:?})",
                    w.word(),
                    u.word(),
                    v.word()
                );
            }
        }
    }
}

#[test]
fn vacuum_coefficient_is_the_trace() {
    for sys in exact_systems() {
        let a = exact(&sys, ratio(1, 4));
        let basis = BallBasis::new(sys.clone(), 4, DEFAULT_BALL_CAP).unwrap();
        let ball = sys.enumerate_ball(2, DEFAULT_BALL_CAP).unwrap();
        let x = element(&a, &ball, &[(0, 3), (1, -2), (2, 5), (ball.len() - 1, 1)]);
        let y = element(&a, &ball, &[(3, 1), (4, 1)]);
        let xy = x.checked_mul(&y).unwrap();
        for z in [x, y, xy] {
            let rep = represent_element(&z, &basis).unwrap();
            assert_eq!(vacuum_coefficient(&rep, &basis), z.trace());
        }
    }
}

#[test]
fn norm_lower_bound_grows_with_the_radius() {
    let sys = Arc::new(CoxeterSystem::free(3));
    let q = MultiParameter::uniform(&sys, ratio(1, 4)).unwrap();
    let a = HeckeAlgebra::<Complex64>::new(sys.clone(), q).unwrap();
    let ball = sys.enumerate_ball(2, DEFAULT_BALL_CAP).unwrap();
    let x = element(&a, &ball, &[(1, 1), (5, 2), (7, -1)]);
    let mut last = 0.0;
    for n in 2..=6 {
        let basis = BallBasis::new(sys.clone(), n, DEFAULT_BALL_CAP).unwrap();
        let est = norm_lower_bound(
            &represent_element(&x, &basis).unwrap(),
            DEFAULT_TOLERANCE,
            DEFAULT_MAX_ITER,
        )
        .estimate;
        assert!(last <= est + 1e-9, "n = {n}: {last} > {est}");
        last = est;
    }
}

// the space X_d

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn operator_norm_is_at_most_the_trace_norm(gi in 0usize..3, d in 1usize..=3, q in 0.1f64..4.0, seed in 0u64..10_000) {
        let graph = [SimplicialGraph::cycle(5), SimplicialGraph::edgeless(3), path4()][gi].clone();
        let sys = Arc::new(CoxeterSystem::from_graph(&graph));
        let qr = BigRational::from_float(q).unwrap();
        let a = HeckeAlgebra::<Complex64>::new(sys.clone(), MultiParameter::uniform(&sys, qr).unwrap()).unwrap();
        let words: Vec<_> = sys.enumerate_ball(d, DEFAULT_BALL_CAP).unwrap().into_iter().filter(|w| w.len() == d).collect();
        let x = random_homogeneous(&a, &words, seed);
        let xd = jd_hecke(&FockSpace::hecke(graph), &x).unwrap();
        prop_assert!(xd.operator_norm() <= xd.frobenius_norm() * (1.0 + 1e-12));
    }
}

#[test]
fn block_count_is_bounded() {
    for graph in [SimplicialGraph::edgeless(3), SimplicialGraph::cycle(5), k5_plus_f()] {
        let sys = CoxeterSystem::from_graph(&graph);
        for d in 1..=5 {
            let found = max_block_count(&sys, d, DEFAULT_BALL_CAP).unwrap();
            assert!(found <= block_count_bound(&graph, d), "d = {d}: {found}");
        }
    }
}

// classifiers

fn not_simple_exactly_outside(l: usize, denominator: i64) {
    let sys = CoxeterSystem::free(l);
    let lo = ratio(1, l as i64 - 1);
    let hi = ratio(l as i64 - 1, 1);
    for i in 1..=100 {
        let q = ratio(i, denominator);
        let expected = if q <= lo || q >= hi {
            Verdict::NotSimple
        } else {
            Verdict::SimpleUniqueTrace
        };
        let got = classify_simplicity(&sys, &MultiParameter::uniform(&sys, q.clone()).unwrap())
            .unwrap()
            .verdict;
        assert_eq!(got, expected, "l = {l}, q = {q}");
    }
}

#[test]
fn free_product_boundary_three_generators() {
    not_simple_exactly_outside(3, 20);
}

#[test]
fn free_product_boundary_four_generators() {
    not_simple_exactly_outside(4, 30);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn verdict_is_invariant_under_sign_flips(
        blocks in prop::sample::select(vec![vec![1usize, 1, 1], vec![2, 1], vec![2, 1, 1], vec![1, 1, 1, 1]]),
        raw in prop::collection::vec((1i64..=30, 1i64..=30), 5),
        signs in prop::collection::vec(any::<bool>(), 5),
    ) {
        let sys = FreeAbelianProduct::new(&blocks).unwrap().system();
        let r = sys.rank();
        let q = MultiParameter::new(&sys, raw[..r].iter().map(|&(n, d)| ratio(n, d)).collect()).unwrap();
        let eps: Vec<i8> = signs[..r].iter().map(|&b| if b { 1 } else { -1 }).collect();
        let a = classify_simplicity(&sys, &q).unwrap();
        let b = classify_simplicity(&sys, &q.flip(&eps).unwrap()).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.region_value_exact, b.region_value_exact);
    }

    #[test]
    fn spherical_affine_non_simplicity_has_a_character(si in 0usize..3, n in 1i64..=20, d in 1i64..=20) {
        let sys = Arc::new([
            CoxeterSystem::dihedral(Exponent::Finite(3)).unwrap(),
            CoxeterSystem::dihedral(Exponent::Finite(4)).unwrap(),
            affine_triangle(),
        ][si].clone());
        let q = MultiParameter::uniform(&sys, ratio(n, d)).unwrap();
        let v = classify_spherical_affine(&sys, &q).unwrap();
        if v.verdict == Verdict::NotSimple {
            prop_assert!(v.certificate.is_some());
            let report = character_certificate(&sys, &q, 20, 2, n as u64).unwrap();
            prop_assert!(report.max_residual < 1e-10);
        }
    }
}

#[test]
fn averaging_estimate_is_monotone_and_contractive() {
    let sys = Arc::new(CoxeterSystem::free(3));
    let set = find_powers_elements(&sys).unwrap().averaging_set();
    for q in [ratio(1, 1), ratio(4, 5), ratio(5, 4)] {
        let a = HeckeAlgebra::<Complex64>::new(sys.clone(), MultiParameter::uniform(&sys, q).unwrap()).unwrap();
        let mut last = 0.0;
        for n in 2..=6 {
            let est = averaging_norm_estimate(&a, &set, n, DEFAULT_BALL_CAP).unwrap().estimate;
            assert!(est + 1e-9 >= last, "n = {n}: {est} < {last}");
            assert!(est <= 1.0 + 1e-9);
            last = est;
        }
    }
}
