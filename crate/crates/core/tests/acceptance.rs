//! Runs every acceptance criterion and prints one PASS/FAIL line for each. Expected
//! values are computed here, from closed forms or by the test's own checkers.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use leaper_core::assembly::{partition_height, thresholds, tour_4pq, tour_even_board, OracleProvider, ThresholdMode};
use leaper_core::graph::{build_leaper_graph, build_projection_graph, edge, EdgeKind, EdgeSet};
use leaper_core::loom::{build_loom, build_lstar, find_bracket, is_bracket, shaft};
use leaper_core::oracle::{
    count_hamiltonian, enumerate_looms, enumerate_pseudotours, find_hamiltonian, projection_graph, search_mu_div, search_mu_var,
    Certificate, MuValue, SearchBudget, Verdict,
};
use leaper_core::projection::{build_ladder, mu_pi_bound, projection_tour, tour_base_wide};
use leaper_core::scarf::build_scarf;
use leaper_core::switch::build_comb;
use leaper_core::{CoprimePair, Interval, LeaperParams, Regime};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;

fn leaper(p: i64, q: i64) -> LeaperParams {
    LeaperParams::new(p, q).unwrap()
}

fn pair(a: i64, b: i64) -> CoprimePair {
    CoprimePair::new(a, b).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn construction_soundness() -> Outcome {
    let mut count = 0;
    for l in LeaperParams::all_up_to_sum(9) {
        let bound = mu_pi_bound(l.pair());
        for n in bound..=bound + 200 {
            let t = projection_tour(l.pair(), n).map_err(|e| format!("{l} n={n}: {e}"))?;
            let lo = t.interval().lo;
            let shifted: EdgeSet<i64> = t.edges().iter().map(|&(u, v)| (u - lo, v - lo)).collect();
            check_projection_tour(l.p(), l.q(), n, &shifted).map_err(|e| format!("{l} n={n}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} tours verified"))
}

fn board_tours() -> Outcome {
    let mut count = 0;
    let knight: Vec<i64> = (5..=49).step_by(2).chain((10..=50).step_by(2)).collect();
    for m in knight {
        let t = tour_4pq(leaper(1, 2), m).map_err(|e| format!("knight m={m}: {e}"))?;
        check_board_tour(1, 2, 8, m, t.edges()).map_err(|e| format!("knight m={m}: {e}"))?;
        count += 1;
    }
    let mut parities = Vec::new();
    for (p, q) in [(1, 4), (2, 3), (2, 5), (3, 4)] {
        let l = leaper(p, q);
        let th = thresholds(l, ThresholdMode::Computed).map_err(|e| e.to_string())?;
        for m in [th.m_ii, th.m_ii + 1] {
            let t = tour_4pq(l, m).map_err(|e| format!("{l} m={m}: {e}"))?;
            check_board_tour(p, q, 4 * p * q, m, t.edges()).map_err(|e| format!("{l} m={m}: {e}"))?;
            count += 1;
            if (p, q) == (3, 4) {
                parities.push(partition_height(m, th.part_min, th.ell).map_err(|e| e.to_string())?.k() % 2);
            }
        }
    }
    ensure(parities.len() == 2 && parities[0] != parities[1], || "antelope heights share a part-count parity".into())?;
    Ok(format!("{count} boards verified; antelope part counts of both parities"))
}

fn even_boards() -> Outcome {
    let provider = OracleProvider::new();
    let mut count = 0;
    for m in (36..=60).step_by(2) {
        for n in (36..=60).step_by(2) {
            let t = tour_even_board(leaper(1, 2), m, n, &provider).map_err(|e| format!("{m}x{n}: {e}"))?;
            ensure((t.height(), t.width()) == (m, n), || format!("{m}x{n}: wrong shape"))?;
            check_board_tour(1, 2, n, m, t.edges()).map_err(|e| format!("{m}x{n}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} boards verified"))
}

fn knight_uniqueness() -> Outcome {
    for n in 1..=12 {
        let want = if n >= 3 { 1 } else { 0 };
        let got = count_hamiltonian(&projection_graph(pair(1, 2), n), 5, SearchBudget::default());
        ensure(got == Some(want), || format!("n={n}: counted {got:?}, expected {want}"))?;
    }
    Ok("n = 1..12".into())
}

fn loom_law() -> Outcome {
    let mut checked = 0;
    for l in LeaperParams::all_up_to_sum(9) {
        let (p, q) = (l.p(), l.q());
        for n in 1..=4 * p * q + 2 {
            let looms = enumerate_looms(l, n, 3);
            let want = usize::from(n % (2 * p * q) == 0);
            ensure(looms.len() == want, || format!("{l} n={n}: {} looms, expected {want}", looms.len()))?;
            for lm in &looms {
                let verts: Vec<i64> = (0..n).collect();
                cycles_of(&verts, lm.iter().copied()).map_err(|e| format!("{l} n={n}: {e}"))?;
                for u in 0..n {
                    let kinds: BTreeSet<i64> = lm.iter().filter(|e| e.0 == u || e.1 == u).map(|e| (e.1 - e.0).abs()).collect();
                    ensure(kinds == BTreeSet::from([p, q]), || format!("{l} n={n}: vertex {u} does not alternate"))?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} sizes"))
}

fn exhausted_below(certs: &[Certificate], value: i64, skip: impl Fn(i64) -> bool) -> Result<usize, String> {
    let by_n: BTreeMap<i64, &str> = certs.iter().map(|c| (c.n, c.verdict.as_str())).collect();
    let mut count = 0;
    for n in 1..value {
        if skip(n) {
            continue;
        }
        match by_n.get(&n) {
            Some(&"exhausted") | Some(&"parity") | Some(&"unique") => count += 1,
            other => return Err(format!("n={n} below the value has no exhaustion certificate ({other:?})")),
        }
    }
    Ok(count)
}

fn mu_div() -> Outcome {
    let budget = SearchBudget::default();
    let mut pairs = Vec::new();
    for p in CoprimePair::all_up_to_sum(12) {
        if 2 * p.a() <= p.b() {
            let want = if p.is_knight() { 4 } else { 3 * p.a() + p.b() };
            pairs.push((p, want, want));
        }
    }
    let narrow = pairs.len();
    for d in 1..=3i64 {
        for b in d + 1..=5 * d {
            let a = b - d;
            let alpha = b / d;
            let Ok(p) = CoprimePair::new(a, b) else { continue };
            if 2 * a <= b || alpha > 4 {
                continue;
            }
            let s = a + b;
            if d == 1 {
                pairs.push((p, (alpha - 1) * s + 1, (alpha - 1) * s + 1));
            } else {
                pairs.push((p, alpha * s + 1, alpha * s + d));
            }
        }
    }
    let mut certs = 0;
    for &(p, lo, hi) in &pairs {
        let r = search_mu_div(p, hi, budget);
        let MuValue::Exact(v) = r.value else {
            return Err(format!("{p}: {:?}", r.value));
        };
        ensure((lo..=hi).contains(&v), || format!("{p}: measured {v}, expected [{lo}, {hi}]"))?;
        let witness = r.witness.ok_or(format!("{p}: no witness"))?;
        let we: EdgeSet<i64> = (0..witness.len()).map(|i| edge(witness[i], witness[(i + 1) % witness.len()])).collect();
        check_projection_tour(p.a(), p.b(), v, &we).map_err(|e| format!("{p}: witness {e}"))?;
        certs += exhausted_below(&r.certificates, v, |n| n % (p.a() + p.b()) == 0).map_err(|e| format!("{p}: {e}"))?;
    }
    Ok(format!("{narrow} narrow pairs and {} wide pairs; {certs} exhaustion certificates", pairs.len() - narrow))
}

fn mu_var() -> Outcome {
    let budget = SearchBudget::default();
    let mut count = 0;
    for p in CoprimePair::all_up_to_sum(12) {
        let (a, b) = (p.a(), p.b());
        let want = if p.is_knight() {
            None
        } else if a == 1 && b % 2 == 1 {
            Some(2 * b)
        } else if b - a == 1 {
            Some(3 * (a + b))
        } else {
            Some(2 * (a + b))
        };
        let n_max = want.unwrap_or(12);
        let r = search_mu_var(p, n_max, budget);
        match want {
            Some(w) => ensure(r.value == MuValue::Exact(w), || format!("{p}: {:?}, expected {w}", r.value))?,
            None => ensure(r.value == MuValue::Unknown { above: 12 } && r.note.is_some(), || format!("{p}: {:?}", r.value))?,
        }
        let odd_odd = p.is_odd_odd();
        exhausted_below(&r.certificates, want.unwrap_or(13), |n| odd_odd && n % 2 == 1).map_err(|e| format!("{p}: {e}"))?;
        count += 1;
    }
    Ok(format!("{count} pairs; (1, 2) Unknown above 12"))
}

fn unique_pseudotours() -> Outcome {
    for (p, q) in [(1, 2), (1, 4), (2, 3), (3, 4)] {
        let l = leaper(p, q);
        let cols = Interval::of_size(2 * p * q).unwrap();
        let rows = Interval::of_size(p + q).unwrap();
        let e = enumerate_pseudotours(&build_leaper_graph(l, cols, rows), 2, SearchBudget::default());
        ensure(e.is_decided() && e.count() == 1, || format!("{l}: {} pseudotours, complete={}", e.count(), e.is_decided()))?;
        let scarf = build_scarf(&build_loom(l, 1).unwrap(), rows, &build_projection_graph(l.pair(), rows).edge_set()).unwrap();
        ensure(e.items[0].edges() == *scarf.edges(), || format!("{l}: the pseudotour is not the scarf"))?;
    }
    Ok("4 leapers; each unique pseudotour is the scarf".into())
}

fn components(vertices: &[i64], edges: impl Iterator<Item = (i64, i64)>) -> usize {
    let index: BTreeMap<i64, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v) in edges {
        let (a, b) = (root(&mut parent, index[&u]), root(&mut parent, index[&v]));
        parent[a] = b;
    }
    (0..vertices.len()).filter(|&i| root(&mut parent, i) == i).count()
}

fn lstar_disconnected() -> Outcome {
    let mut count = 0;
    for l in LeaperParams::all_up_to_sum(13).into_iter().filter(|l| l.p() >= 3) {
        for k in 1..=3 {
            let (g, _) = build_lstar(l, k).map_err(|e| e.to_string())?;
            let verts: Vec<i64> = g.vertices().collect();
            let c = components(&verts, g.edges());
            ensure(c > 1, || format!("{l} k={k}: connected"))?;
            count += 1;
        }
    }
    Ok(format!("{count} (leaper, k) cases disconnected"))
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    let mut ladders = 0;
    for p in CoprimePair::all_up_to_sum(13).into_iter().filter(|p| p.regime() == Regime::Wide) {
        for k in 1..=p.alpha() / 2 {
            check_ladder_endpoints(p, k).map_err(|e| format!("ladder {p} k={k}: {e}"))?;
            ladders += 1;
        }
    }

    let mut walks = 0;
    for (m, n) in walk_pairs(12) {
        for _ in 0..10_000 {
            let k = rng.gen_range(1..=3);
            let w = random_walk(&mut rng, m, n, k);
            for d in 1..m + n {
                ensure(realised(&w, d), || format!("walk ({m}, {n}) misses {d}: {w:?}"))?;
            }
            walks += 1;
        }
        let control = tour_walk(m, n);
        ensure(*control.last().unwrap() == 0, || format!("control walk ({m}, {n}) is not closed"))?;
        ensure((1..m + n).all(|d| realised(&control, d)), || format!("control walk ({m}, {n}) misses a difference"))?;
        ensure(!realised(&control, m + n), || format!("control walk ({m}, {n}) realises {}", m + n))?;
    }

    for i in 0..50 {
        let s = random_scarf(&mut rng);
        check_row_visits(s.cols().len(), s.rows().len(), s.edges()).map_err(|e| format!("scarf {i} ({}): {e}", s.leaper()))?;
    }

    let mut brackets = 0;
    for l in LeaperParams::all_up_to_sum(13) {
        for k in 1..=2 {
            let loom = build_loom(l, k).map_err(|e| e.to_string())?;
            for c in &loom.cycles().cycles {
                for kind in [EdgeKind::Short, EdgeKind::Long] {
                    ensure(has_bracket(l.p(), l.q(), c, kind), || format!("{l} k={k}: no {kind:?} bracket"))?;
                    let b = find_bracket(l, c, kind).map_err(|e| format!("{l}: {e}"))?;
                    ensure(is_bracket(l, &b, kind) && b.iter().all(|v| c.contains(v)), || format!("{l}: bad bracket {b:?}"))?;
                    brackets += 1;
                }
            }
        }
    }

    let mut flips = 0;
    let mut attempts = 0;
    while flips < 100 {
        attempts += 1;
        ensure(attempts < 100_000, || format!("only {flips} valid switches found"))?;
        let s = random_scarf(&mut rng);
        let Some(sw) = random_switch(&mut rng, &s) else { continue };
        if let Some(r) = check_flip(s.leaper(), s.cols().len(), s.rows().len(), s.edges(), &sw) {
            r.map_err(|e| format!("flip on {}: {e}", s.leaper()))?;
            flips += 1;
        }
    }
    Ok(format!(
        "{ladders} ladders, {walks} walks plus controls, 50 scarves, {brackets} brackets, {flips} flips"
    ))
}

fn golden() -> Outcome {
    let r = find_hamiltonian(&projection_graph(pair(2, 3), 5), SearchBudget::default());
    let Verdict::Found(c) = r.verdict else { return Err("no tour of the 5-vertex graph".into()) };
    let got: BTreeSet<(i64, i64)> = (0..5).map(|i| edge(c[i], c[(i + 1) % 5])).collect();
    ensure(got == BTreeSet::from([(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]), || format!("edges {got:?}"))?;

    let cycles = build_loom(leaper(3, 4), 1).unwrap().cycles().len();
    ensure(cycles == 2, || format!("antelope loom has {cycles} cycles"))?;

    let z = leaper(2, 3);
    let rows = Interval::of_size(5).unwrap();
    let scarf = build_scarf(&build_loom(z, 2).unwrap(), rows, &build_projection_graph(z.pair(), rows).edge_set()).unwrap();
    let comb = build_comb(&scarf, 0, &shaft(z, 7).unwrap()).map_err(|e| e.to_string())?;
    let cells: Vec<(i64, i64)> = comb.switch.cells().iter().map(|c| (c.x, c.y)).collect();
    let want = [(7, 0), (9, 3), (11, 0), (13, 3), (15, 0), (17, 3), (19, 0), (16, 2), (13, 0), (10, 2)];
    ensure(cells == want, || format!("comb cells {cells:?}"))?;

    for (a, b, n) in [(5, 8, 29), (7, 10, 57)] {
        let t = tour_base_wide(pair(a, b)).map_err(|e| e.to_string())?;
        ensure(t.len() == n, || format!("({a}, {b}) base tour has size {}", t.len()))?;
        let lo = t.interval().lo;
        let shifted: EdgeSet<i64> = t.edges().iter().map(|&(u, v)| (u - lo, v - lo)).collect();
        check_projection_tour(a, b, n, &shifted)?;
    }
    build_ladder(pair(5, 8), 1).map_err(|e| e.to_string())?;
    Ok("5-vertex tour, antelope loom, zebra comb, base tours 29 and 57".into())
}

fn main() {
    let criteria: Vec<(&str, Option<u64>, fn() -> Outcome)> = vec![
        ("projection tours above the bound, p + q <= 9", Some(60), construction_soundness),
        ("m x 4pq board tours", Some(600), board_tours),
        ("even knight boards 36..60", Some(300), even_boards),
        ("knight projection graphs have one tour", None, knight_uniqueness),
        ("looms exist exactly at multiples of 2pq and are unique", None, loom_law),
        ("smallest Hamiltonian size off multiples of a + b", None, mu_div),
        ("smallest size with two tours", None, mu_var),
        ("unique pseudotours on (p + q) x 2pq", None, unique_pseudotours),
        ("loom plus alternating rhombi is disconnected", None, lstar_disconnected),
        ("property suites", None, properties),
        ("golden values", None, golden),
    ];
    let mut failed = 0;
    for (i, (title, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if took > Duration::from_secs(s) => Err(format!("took {:.1} s, limit {s} s", took.as_secs_f64())),
            (o, _) => o,
        };
        let (mark, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        println!("criterion {:>2} {mark}  {title}: {detail} ({:.1} s)", i + 1, took.as_secs_f64());
        failed += usize::from(outcome.is_err());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
