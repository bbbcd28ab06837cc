//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use transitive::boolean::{compose, iterate, make_named, BooleanFunction};
use transitive::codec::{
    decode_cell, encode_cell, ksum_decode_block, ksum_encode_value, random_valid_word, rotation1, rotation2,
    swap_half, tag_transform, KSumParams, Role, Scheme, SchemeKind,
};
use transitive::constructions::{
    build_enc_input, desensitize, desensitized_generators, enc_ksum_eval, invariance_suite, CertificateCollection,
    Construction, ConstructionId,
};
use transitive::groups::{map_index, GeneratorClass};
use transitive::measures::{measure_report, Measure, Restriction};
use transitive::pointer::{
    a1_eval, build_instance, mod_eval, random_symbol, BackPointer, BrickRotation, BuildOptions, CellSymbol, Coord,
    MatrixType, Outer, PointerMatrix, Symmetry, Tag,
};
use transitive::TruthTable;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn within(pass: bool, elapsed: Duration, limit: Duration, detail: String) -> Verdict {
    let timed = elapsed <= limit;
    verdict(
        pass && timed,
        format!("{detail}; {:.2}s of {}s", elapsed.as_secs_f64(), limit.as_secs()),
    )
}

fn table(spec: &str) -> TruthTable {
    BooleanFunction::parse(spec).unwrap().truth_table().unwrap()
}

fn rub_measures() -> Verdict {
    let start = Instant::now();
    let r = measure_report(&table("RUB:4"), &[Measure::S, Measure::Bs]).unwrap();
    let ok = r.s == Some(4) && r.bs == Some(8);
    within(ok, start.elapsed(), Duration::from_secs(5), r.line(&[Measure::S, Measure::Bs]))
}

fn measure_order() -> Verdict {
    let start = Instant::now();
    let mut tables: Vec<TruthTable> = (0..256usize)
        .map(|k| TruthTable::from_fn(3, |r| k >> r & 1 == 1).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..1000 {
        let n = 4 + i % 3;
        tables.push(TruthTable::new(n, (0..1usize << n).map(|_| rng.gen()).collect()).unwrap());
    }
    let violations: Vec<String> = tables
        .par_iter()
        .flat_map(|t| {
            let r = measure_report(t, &Measure::ALL).unwrap();
            let mut bad = r.order_violations();
            if r.adeg.is_none() || r.lambda.is_none() || r.d.is_none() {
                bad.push("measure missing".into());
            }
            bad
        })
        .collect();
    within(
        violations.is_empty(),
        start.elapsed(),
        Duration::from_secs(60),
        format!("{} functions, {} violations", tables.len(), violations.len()),
    )
}

fn composition() -> Verdict {
    let start = Instant::now();
    let d1 = measure_report(&table("AND:2 o OR:2"), &[Measure::D]).unwrap().d;
    let d2 = measure_report(&table("OR:2 o AND:2"), &[Measure::D]).unwrap().d;
    let p2 = make_named("PARITY", &[2]).unwrap();
    let deg = measure_report(&compose(&p2, &p2).truth_table().unwrap(), &[Measure::Deg]).unwrap().deg;
    let it = iterate(&p2, 2).unwrap().truth_table().unwrap() == table("PARITY:4");
    let ok = d1 == Some(4) && d2 == Some(4) && deg == Some(4) && it;
    within(
        ok,
        start.elapsed(),
        Duration::from_secs(5),
        format!("D={d1:?},{d2:?} deg={deg:?} iterate={it}"),
    )
}

fn schemes() -> [Scheme; 3] {
    [
        Scheme::new(SchemeKind::Dec96, 16).unwrap(),
        Scheme::new(SchemeKind::Dec112, 16).unwrap(),
        Scheme::new(SchemeKind::Dec240, 8).unwrap(),
    ]
}

fn map_blocks(scheme: &Scheme, bits: &[bool], f: impl Fn(&[bool]) -> Vec<bool>) -> Vec<bool> {
    bits.chunks_exact(scheme.block_len()).flat_map(f).collect()
}

fn codec_roundtrip() -> Verdict {
    let start = Instant::now();
    let mut failures = 0usize;
    let mut checked = 0usize;
    for scheme in schemes() {
        let (rows, cols) = scheme.matrix_shape();
        let per_symbol: Vec<(usize, usize)> = (0..200u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(1000 + i);
                let sym = random_symbol(rows, cols, scheme.matrix_type(), &mut rng);
                let tag = *scheme.tags().choose(&mut rng).unwrap();
                let base = encode_cell(&scheme, &sym, tag, Some(&mut rng)).unwrap().into_vec();
                let mut bad = 0;
                for _ in 0..1000 {
                    let mut w = base.clone();
                    random_valid_word(&scheme, &mut w, &mut rng);
                    let d = decode_cell(&scheme, &w);
                    if !(d.valid && d.symbol == sym && d.tag == tag) {
                        bad += 1;
                    }
                }
                // Tag transitions: segment moves on every block of a ⊢ word.
                let plain = encode_cell(&scheme, &sym, Tag::Vdash, Some(&mut rng)).unwrap().into_vec();
                let moves: Vec<(Vec<bool>, Tag)> = if scheme.segments() == 2 {
                    vec![(map_blocks(&scheme, &plain, swap_half), Tag::Dashv)]
                } else {
                    vec![
                        (map_blocks(&scheme, &plain, rotation1), Tag::Top),
                        (map_blocks(&scheme, &plain, rotation2), Tag::Dashv),
                    ]
                };
                for (w, want) in &moves {
                    let d = decode_cell(&scheme, w);
                    let same = map_blocks(&scheme, &plain, |b| tag_transform(b, *want, scheme.segments()));
                    if !(d.valid && d.symbol == sym && d.tag == *want && same == *w) {
                        bad += 1;
                    }
                }
                (bad, 1000 + moves.len())
            })
            .collect();
        for (b, c) in per_symbol {
            failures += b;
            checked += c;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        if decode_cell(&scheme, &vec![false; scheme.cell_len()]).valid {
            failures += 1;
        }
        for _ in 0..50 {
            let sym = random_symbol(rows, cols, scheme.matrix_type(), &mut rng);
            let mut w = encode_cell(&scheme, &sym, Tag::Vdash, Some(&mut rng)).unwrap().into_vec();
            // Change the weight of one non-encoding block.
            let part = rng.gen_range(0..scheme.parts());
            let block = rng.gen_range(1..4);
            let bl = scheme.block_len();
            let base = part * scheme.part_len() + block * bl;
            let ones: Vec<usize> = (base..base + bl).filter(|&i| w[i]).collect();
            let zeros: Vec<usize> = (base..base + bl).filter(|&i| !w[i]).collect();
            let delta = rng.gen_range(1..=3usize);
            if zeros.len() >= delta && (ones.len() < delta || rng.gen()) {
                for &i in zeros.choose_multiple(&mut rng, delta) {
                    w[i] = true;
                }
            } else {
                for &i in ones.choose_multiple(&mut rng, delta) {
                    w[i] = false;
                }
            }
            checked += 1;
            if decode_cell(&scheme, &w).valid {
                failures += 1;
            }
        }
    }
    within(
        failures == 0,
        start.elapsed(),
        Duration::from_secs(60),
        format!("{checked} checks, {failures} failures"),
    )
}

fn weight(bits: &[bool]) -> usize {
    bits.iter().filter(|&&b| b).count()
}

fn weight_ledger() -> Verdict {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut checked = 0;
    let cases = [
        (SchemeKind::Dec96, [16, 32, 64]),
        (SchemeKind::Dec112, [16, 32, 64]),
        (SchemeKind::Dec240, [8, 16, 32]),
    ];
    for (kind, ns) in cases {
        for n in ns {
            let scheme = Scheme::new(kind, n).unwrap();
            let l = scheme.log_n();
            let (rows, cols) = scheme.matrix_shape();
            let bricks = cols / n;
            for v in [false, true] {
                for idx in 1..=n {
                    let c = Coord::new(idx - 1, (idx - 1) % n + ((idx - 1) % bricks) * n);
                    let back = match scheme.matrix_type() {
                        MatrixType::Type1 => BackPointer::Column(c.col),
                        MatrixType::Type2 => BackPointer::Cell(c),
                    };
                    assert!(c.row < rows && c.col < cols);
                    let sym = CellSymbol {
                        value: v,
                        left: Some(c),
                        right: Some(c),
                        back: Some(back),
                    };
                    let w = encode_cell(&scheme, &sym, Tag::Vdash, None).unwrap().into_vec();
                    for (p, part) in w.chunks_exact(scheme.part_len()).enumerate() {
                        let blocks: Vec<usize> = part.chunks_exact(scheme.block_len()).map(weight).collect();
                        // 1-based part number i: pointer parts carry L, 2L+1+i, 2L+1, 2L+2.
                        let i = p + 1;
                        let (want_blocks, want_total) = match (scheme.roles()[p], scheme.segments()) {
                            (Role::Value, 2) => (
                                vec![4 * l - 1 - v as usize, 4 * l, 2 * l + 1, 2 * l + 2],
                                12 * l + 2 - v as usize,
                            ),
                            (Role::Value, _) => (
                                vec![6 * l - 3 - v as usize, 6 * l, 2 * l + 1, 2 * l + 2],
                                16 * l - v as usize,
                            ),
                            (Role::Pointer(..), _) => (vec![l, 2 * l + 1 + i, 2 * l + 1, 2 * l + 2], 7 * l + 4 + i),
                        };
                        checked += 1;
                        if blocks != want_blocks || weight(part) != want_total {
                            mismatches += 1;
                        }
                    }
                }
            }
        }
    }
    within(
        mismatches == 0,
        start.elapsed(),
        Duration::from_secs(5),
        format!("{checked} parts, {mismatches} mismatches"),
    )
}

fn transitivity() -> Verdict {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for (id, n, want) in [(ConstructionId::F1, 16, 98_304), (ConstructionId::F2, 16, 114_688)] {
        let a = Construction::new(id, n, 1, 4).unwrap().group().unwrap();
        let size = a.orbit(0);
        ok &= size == want && a.len() == want;
        details.push(format!("{id} orbit={size}/{want}"));
    }
    let a = Construction::new(ConstructionId::F3b, 8, 1, 4).unwrap().group().unwrap();
    ok &= a.len() == 368_640;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pairs: Vec<(usize, usize)> = (0..1000).map(|_| (rng.gen_range(0..a.len()), rng.gen_range(0..a.len()))).collect();
    let hits = pairs
        .par_iter()
        .filter(|&&(p, q)| map_index(&a, p, q).is_ok_and(|w| a.apply_word(&w, p) == q))
        .count();
    ok &= hits == 1000;
    details.push(format!("F3 map_index={hits}/1000"));
    within(ok, start.elapsed(), Duration::from_secs(300), details.join(" "))
}

fn invariance() -> Verdict {
    let mut ok = true;
    let mut details = Vec::new();
    for (id, n) in [(ConstructionId::F1, 16), (ConstructionId::F2, 16), (ConstructionId::F3b, 8)] {
        let start = Instant::now();
        let c = Construction::new(id, n, 1, 4).unwrap();
        let s = invariance_suite(&c, 100, 100, 3, 42).unwrap();
        let min_class = GeneratorClass::ALL
            .iter()
            .map(|k| s.report.per_class.get(k).copied().unwrap_or(0))
            .min()
            .unwrap();
        let elapsed = start.elapsed();
        let this = s.passed() && min_class >= 500 && elapsed <= Duration::from_secs(300);
        ok &= this;
        details.push(format!(
            "{id}: {} checks, {} violations, min class {min_class}, control {}/{}, {:.1}s",
            s.report.checks,
            s.report.violations.len(),
            s.control.violations.len(),
            s.control.checks,
            elapsed.as_secs_f64()
        ));
    }
    verdict(ok, details.join("; "))
}

fn mutual_exclusivity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = 0;
    let mut checked = 0;
    let setups = [
        (Outer::A1, Symmetry::Transpose, 16, 16),
        (Outer::A2, Symmetry::Transpose, 16, 16),
        (Outer::A3 { k: 8 }, Symmetry::Brick, 8, 64),
        (Outer::A3 { k: 1 }, Symmetry::Brick, 8, 64),
    ];
    for i in 0..100 {
        let (outer, sym, rows, cols) = setups[i % setups.len()];
        let branch = *sym.tags().choose(&mut rng).unwrap();
        let inst = build_instance(outer, sym, rows, cols, branch, BuildOptions::default(), &mut rng).unwrap();
        let mut views = vec![(inst.matrix.clone(), inst.tags.clone())];
        match sym {
            Symmetry::Transpose => views.push((inst.matrix.transpose(), inst.tags.transpose())),
            Symmetry::Brick => {
                for r in [BrickRotation::Top, BrickRotation::Dashv] {
                    views.push((inst.matrix.brick_rot(r).unwrap(), inst.tags.brick_rot(r).unwrap()));
                }
            }
        }
        for (m, t) in &views {
            checked += 1;
            if mod_eval(outer, sym, m, t).unwrap().accepting.len() > 1 {
                bad += 1;
            }
        }
    }
    verdict(bad == 0, format!("{checked} matrices, {bad} with two accepting branches"))
}

fn enc_oracle() -> Verdict {
    let start = Instant::now();
    let mut disagree = 0;
    let mut total = 0;
    for (b, k) in [(4, 1), (4, 2)] {
        let p = KSumParams::new(b, k).unwrap();
        let oracle = |x: &[bool]| {
            let vals: Vec<usize> = x.chunks(p.block_len()).filter_map(|blk| ksum_decode_block(blk, &p)).collect();
            let n = vals.len();
            (0..1usize << n)
                .filter(|m| m.count_ones() as usize == k)
                .any(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| vals[i]).sum::<usize>() % p.alphabet() == 0)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(9 + k as u64);
        for i in 0..10_100 {
            let x: Vec<bool> = if i < 10_000 {
                let mut x = Vec::new();
                for _ in 0..b {
                    if rng.gen_bool(0.5) {
                        let v = rng.gen_range(0..p.alphabet());
                        x.extend(ksum_encode_value(v, &p, Some(&mut rng)).unwrap().into_vec());
                    } else {
                        x.extend((0..p.block_len()).map(|_| rng.gen::<bool>()));
                    }
                }
                x
            } else {
                // A 1-input, with one bit flipped in half of the cases.
                let mut x = build_enc_input(&p, false, &mut rng).unwrap().into_vec();
                if i % 2 == 0 {
                    let j = rng.gen_range(0..x.len());
                    x[j] = !x[j];
                }
                x
            };
            total += 1;
            if enc_ksum_eval(&p, &x) != oracle(&x) {
                disagree += 1;
            }
        }
    }
    within(
        disagree == 0,
        start.elapsed(),
        Duration::from_secs(60),
        format!("{total} inputs, {disagree} disagreements"),
    )
}

fn desensitization() -> Verdict {
    let start = Instant::now();
    let r = |pairs: &[(usize, bool)]| Restriction::from_pairs(pairs).unwrap();
    let and2 = make_named("AND", &[2]).unwrap();
    let dt = desensitize(&and2, &CertificateCollection::new(vec![r(&[(0, true), (1, true)])])).unwrap();
    let equal = dt.truth_table().unwrap() == table("AND:6");

    let p2 = make_named("PARITY", &[2]).unwrap();
    let u = CertificateCollection::new(vec![r(&[(0, true), (1, false)]), r(&[(0, false), (1, true)])]);
    let t = desensitize(&p2, &u).unwrap().truth_table().unwrap();
    let gens = desensitized_generators(&[vec![1, 0]], 2);
    let violations = gens.iter().filter(|g| t.permute_vars(g) != t).count();
    within(
        equal && violations == 0,
        start.elapsed(),
        Duration::from_secs(5),
        format!("AND:2 -> AND:6 {equal}; {} generators, {violations} violations", gens.len()),
    )
}

fn pointer_invariance() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bad = 0;
    let mut ones = 0;
    for i in 0..100 {
        // Half are builder matrices, so both values are exercised.
        let m = if i % 2 == 0 {
            build_instance(Outer::A1, Symmetry::Transpose, 4, 4, Tag::Vdash, BuildOptions::default(), &mut rng)
                .unwrap()
                .matrix
        } else {
            let cells = (0..16).map(|_| random_symbol(4, 4, MatrixType::Type1, &mut rng)).collect();
            PointerMatrix::from_cells(4, 4, MatrixType::Type1, cells).unwrap()
        };
        let v = a1_eval(&m);
        ones += v as usize;
        for _ in 0..50 {
            let mut rho: Vec<usize> = (0..4).collect();
            let mut gamma: Vec<usize> = (0..4).collect();
            rho.shuffle(&mut rng);
            gamma.shuffle(&mut rng);
            if a1_eval(&m.permute(&rho, &gamma)) != v {
                bad += 1;
            }
        }
    }
    within(
        bad == 0,
        start.elapsed(),
        Duration::from_secs(30),
        format!("5000 permutations ({ones} accepting matrices), {bad} violations"),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 11] = [
        ("RUB measures", rub_measures),
        ("measure order", measure_order),
        ("composition exactness", composition),
        ("codec roundtrip", codec_roundtrip),
        ("standard-form weights", weight_ledger),
        ("group transitivity", transitivity),
        ("function invariance", invariance),
        ("branch exclusivity", mutual_exclusivity),
        ("k-sum oracle", enc_oracle),
        ("desensitization", desensitization),
        ("pointer-matrix invariance", pointer_invariance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<26} {} ({})",
            i + 1,
            name,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
