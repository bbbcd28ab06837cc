//! Measures, codes and evaluators compared with slow, independent
//! implementations, plus frozen values computed by hand.

use std::collections::HashMap;

use itertools::Itertools;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use transitive::boolean::{make_named, BooleanFunction};
use transitive::codec::{bb, encode_pointer, ksum_decode_block, ksum_encode_value, Axis, KSumParams, Scheme, SchemeKind};
use transitive::constructions::{enc_block_ksum_eval, enc_ksum_eval, Construction, ConstructionId};
use transitive::groups::{bt_generators, orbit};
use transitive::measures::{
    approx_degree, block_sensitivity, certificate_complexity, degree, deterministic_qc, sensitivity,
    spectral_sensitivity, DEFAULT_EPS, DEFAULT_TOL,
};
use transitive::pointer::{path_sequence, Direction};
use transitive::TruthTable;

fn random_table(n: usize, rng: &mut ChaCha8Rng) -> TruthTable {
    TruthTable::new(n, (0..1usize << n).map(|_| rng.gen()).collect()).unwrap()
}

fn oracle_d(t: &TruthTable) -> usize {
    fn go(t: &TruthTable, fixed: usize, vals: usize, memo: &mut HashMap<(usize, usize), usize>) -> usize {
        if let Some(&d) = memo.get(&(fixed, vals)) {
            return d;
        }
        let n = t.arity();
        let rows: Vec<bool> = (0..1usize << n)
            .filter(|r| r & fixed == vals)
            .map(|r| t.get(r))
            .collect();
        let d = if rows.iter().all_equal() {
            0
        } else {
            (0..n)
                .filter(|i| fixed >> i & 1 == 0)
                .map(|i| 1 + go(t, fixed | 1 << i, vals, memo).max(go(t, fixed | 1 << i, vals | 1 << i, memo)))
                .min()
                .unwrap()
        };
        memo.insert((fixed, vals), d);
        d
    }
    go(t, 0, 0, &mut HashMap::new())
}

fn oracle_s(t: &TruthTable) -> usize {
    let n = t.arity();
    (0..1usize << n)
        .map(|x| (0..n).filter(|i| t.get(x) != t.get(x ^ 1 << i)).count())
        .max()
        .unwrap()
}

fn oracle_bs(t: &TruthTable) -> usize {
    let n = t.arity();
    let full = (1usize << n) - 1;
    fn pack(t: &TruthTable, x: usize, free: usize) -> usize {
        let mut best = 0;
        let mut b = free;
        while b > 0 {
            if t.get(x) != t.get(x ^ b) {
                best = best.max(1 + pack(t, x, free & !b));
            }
            b = (b - 1) & free;
        }
        best
    }
    (0..1usize << n).map(|x| pack(t, x, full)).max().unwrap()
}

fn oracle_c(t: &TruthTable) -> usize {
    let n = t.arity();
    (0..1usize << n)
        .map(|x| {
            (0..1usize << n)
                .filter(|&s| (0..1usize << n).all(|y| (y ^ x) & s != 0 || t.get(y) == t.get(x)))
                .map(|s| s.count_ones() as usize)
                .min()
                .unwrap()
        })
        .max()
        .unwrap()
}

/// Degree from solving the subset-indicator system over the reals.
fn oracle_deg(t: &TruthTable) -> usize {
    let n = t.arity();
    let size = 1usize << n;
    let m = DMatrix::from_fn(size, size, |x, s| if s & x == s { 1.0 } else { 0.0 });
    let f = DVector::from_fn(size, |x, _| t.get(x) as u8 as f64);
    let c = m.lu().solve(&f).unwrap();
    (0..size)
        .filter(|&s| c[s].abs() > 1e-9)
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Largest eigenvalue of the sensitivity graph's adjacency matrix.
fn oracle_lambda(t: &TruthTable) -> f64 {
    let n = t.arity();
    let size = 1usize << n;
    let a = DMatrix::from_fn(size, size, |x, y| {
        let d = x ^ y;
        if d.count_ones() == 1 && t.get(x) != t.get(y) {
            1.0
        } else {
            0.0
        }
    });
    SymmetricEigen::new(a).eigenvalues.iter().fold(0.0f64, |m: f64, v: &f64| m.max(v.abs()))
}

#[test]
fn measures_match_brute_force_on_small_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tables: Vec<TruthTable> = (0..256usize)
        .map(|k| TruthTable::from_fn(3, |r| k >> r & 1 == 1).unwrap())
        .collect();
    tables.extend((0..60).map(|_| random_table(4, &mut rng)));
    for t in &tables {
        assert_eq!(deterministic_qc(t).unwrap(), oracle_d(t), "{t:?}");
        assert_eq!(sensitivity(t).unwrap().0, oracle_s(t));
        assert_eq!(block_sensitivity(t).unwrap(), oracle_bs(t));
        assert_eq!(certificate_complexity(t).unwrap().0, oracle_c(t));
        assert_eq!(degree(t).unwrap(), oracle_deg(t));
        let l = spectral_sensitivity(t, DEFAULT_TOL).unwrap();
        assert!((l - oracle_lambda(t)).abs() < 1e-6, "{l} vs {}", oracle_lambda(t));
    }
}

#[test]
fn named_measure_values() {
    let t = |s: &str| BooleanFunction::parse(s).unwrap().truth_table().unwrap();
    // Hand-derived: every variable of RUB:4 is sensitive only in its own
    // aligned pair, and each of the 8 pairs is a disjoint block at 0.
    assert_eq!(sensitivity(&t("RUB:4")).unwrap().0, 4);
    assert_eq!(block_sensitivity(&t("RUB:4")).unwrap(), 8);
    assert_eq!(deterministic_qc(&t("AND:2 o OR:2")).unwrap(), 4);
    assert_eq!(deterministic_qc(&t("OR:2 o AND:2")).unwrap(), 4);
    assert_eq!(degree(&t("PARITY:2 o PARITY:2")).unwrap(), 4);
    assert_eq!(deterministic_qc(&t("NW")).unwrap(), 3);
    assert_eq!(approx_degree(&t("PARITY:3"), DEFAULT_EPS).unwrap(), 3);
    assert_eq!(approx_degree(&t("ID"), DEFAULT_EPS).unwrap(), 1);
}

#[test]
fn balanced_codes_and_paths() {
    let b = |l| bb(l, 2).unwrap().iter().map(|&x| x as u8).collect::<Vec<_>>();
    assert_eq!(b(1), [0, 1, 1, 0]);
    assert_eq!(b(2), [1, 0, 0, 1]);
    assert_eq!(b(4), [0, 1, 0, 1]);
    let e = encode_pointer(Axis::Col, 1, 2, 2).unwrap();
    assert_eq!(e.iter().map(|&x| x as u8).collect::<Vec<_>>(), [0, 0, 0, 0, 0, 1, 1, 0]);
    assert_eq!(path_sequence(3, 4).unwrap(), [Direction::Right, Direction::Left]);
    assert_eq!(path_sequence(1, 8).unwrap(), [Direction::Left; 3]);
}

#[test]
fn bt_and_orbit_examples() {
    assert_eq!(bt_generators(2).unwrap(), [vec![1, 0]]);
    assert_eq!(bt_generators(4).unwrap()[0], [2, 3, 0, 1]);
    assert_eq!(bt_generators(16).unwrap().len(), 15);
    assert_eq!(orbit(&bt_generators(8).unwrap(), 0, 8), 8);
}

#[test]
fn input_lengths() {
    let len = |id, n| Construction::new(id, n, 1, 4).unwrap().len();
    assert_eq!(len(ConstructionId::F1, 16), 96 * 4 * 256);
    assert_eq!(len(ConstructionId::F2, 16), 112 * 4 * 256);
    assert_eq!(len(ConstructionId::F3b, 8), 240 * 3 * 512);
    assert_eq!(Scheme::new(SchemeKind::Dec240, 8).unwrap().cell_len(), 720);
}

/// Decodes each block on its own and tries every k-subset.
fn subset_oracle(p: &KSumParams, x: &[bool]) -> bool {
    let vals: Vec<usize> = x
        .chunks(p.block_len())
        .filter_map(|b| ksum_decode_block(b, p))
        .collect();
    vals.iter()
        .combinations(p.k)
        .any(|c| c.into_iter().sum::<usize>() % p.alphabet() == 0)
}

#[test]
fn enc_ksum_matches_subset_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (b, k) in [(4, 1), (4, 2)] {
        let p = KSumParams::new(b, k).unwrap();
        for _ in 0..500 {
            let mut x = Vec::new();
            for _ in 0..b {
                if rng.gen_bool(0.6) {
                    let v = rng.gen_range(0..p.alphabet());
                    x.extend(ksum_encode_value(v, &p, Some(&mut rng)).unwrap().into_vec());
                } else {
                    x.extend((0..p.block_len()).map(|_| rng.gen::<bool>()));
                }
            }
            assert_eq!(enc_ksum_eval(&p, &x), subset_oracle(&p, &x));
        }
    }
}

#[test]
fn enc_ksum_crafted() {
    let p = KSumParams::new(4, 2).unwrap();
    let enc = |v| ksum_encode_value(v, &p, None).unwrap().into_vec();
    let dense = vec![true; p.block_len()];
    let x = [enc(3), enc(13), dense.clone(), dense.clone()].concat();
    assert!(enc_ksum_eval(&p, &x));
    assert!(enc_block_ksum_eval(&p, &x));
    let light = vec![false; p.block_len()];
    let y = [enc(3), enc(13), dense, light].concat();
    assert!(enc_ksum_eval(&p, &y));
    assert!(!enc_block_ksum_eval(&p, &y));

    let p1 = KSumParams::new(4, 1).unwrap();
    let zero = ksum_encode_value(0, &p1, None).unwrap().into_vec();
    let x = [zero, vec![true; 3 * p1.block_len()]].concat();
    assert!(enc_ksum_eval(&p1, &x));
}

#[test]
fn qvsc_builder_and_zero_input() {
    let c = Construction::new(ConstructionId::FQvsC, 0, 0, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let x = c.build_one_input(&mut rng).unwrap();
    assert_eq!(x.len(), c.len());
    assert!(c.eval(x.as_slice()).unwrap());
    assert!(!c.eval(&vec![false; c.len()]).unwrap());
}

#[test]
fn named_function_examples() {
    let and2 = make_named("AND", &[2]).unwrap().truth_table().unwrap();
    assert_eq!(and2.outputs(), [false, false, false, true]);
    let nw = make_named("NW", &[]).unwrap();
    assert!(!nw.eval_bits(&[false, false, false]));
    assert!(nw.eval_bits(&[false, true, false]));
}
