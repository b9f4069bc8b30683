//! Acceptance suite. One test per criterion, numbered; the per-test result
//! line from the harness is the pass/fail record for that criterion, and
//! each test also prints a one-line summary with its key numbers.

mod common;

use std::time::{Duration, Instant};

use common::{
    check_decomposition, er_graph, exhaustive_p_centered, naive_degeneracy, random_coloring,
};
use isocount::baseline::baseline_count;
use isocount::color::{
    compute_p_centered_coloring, is_p_centered, orient_degeneracy, orient_sandpile, Augmentation,
    ColorConfig, Prioritization, SplitHeuristic,
};
use isocount::combine::{count_hybrid, count_inclusion_exclusion, exact_color_count};
use isocount::decompose::{enumerate_color_sets, treedepth_decomposition, ColorSetCursor};
use isocount::gen::{gen_chung_lu, gen_chung_lu_households, gen_sbm, gen_tree_paths, rng_for,
    sbm_default_matrix};
use isocount::graph::{build_motif, Graph, MotifKind, MotifSpec};
use isocount::harness::{
    run_split_experiment, run_treedepth_experiment, SWEEP_AUGMENTATIONS, SWEEP_COMBINES,
    SWEEP_ORIENTATIONS, SWEEP_PRIORITIZATIONS,
};
use isocount::pipeline::{diff_sum_ratio, run_pipeline, Engine, PipelineConfig};
use rand::Rng;

fn motif(spec: &str) -> Graph {
    build_motif(&MotifSpec::parse(spec).unwrap()).unwrap()
}

fn motif_for(i: usize) -> Graph {
    let specs = ["path:3", "path:4", "path:5", "star:4", "star:5"];
    motif(specs[i % 5])
}

struct Instance {
    name: String,
    graph: Graph,
    motif: Graph,
    seed: u64,
}

/// Tree-paths parameter triples within d <= 6, s <= 4, l <= 4, all giving
/// hosts small enough for the backtracking oracle.
const TREE_TRIPLES: [(u32, u32, u32); 15] = [
    (2, 1, 1),
    (3, 2, 2),
    (4, 3, 1),
    (5, 2, 3),
    (6, 1, 1),
    (4, 4, 4),
    (3, 1, 4),
    (5, 4, 1),
    (6, 2, 1),
    (2, 4, 3),
    (5, 1, 2),
    (4, 2, 2),
    (6, 3, 2),
    (3, 3, 3),
    (2, 2, 4),
];

/// The 200-instance corpus for criteria 1 and 3: uniform random graphs up
/// to n = 40, Chung-Lu / household / block-model graphs up to n = 200
/// (smaller when the motif has five vertices, to keep the oracle budget),
/// and tree-paths hosts. Fully determined by fixed seeds.
fn corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for i in 0..50usize {
        let motif = motif_for(i);
        let n = 8 + (i * 33) / 50;
        let mut rng = rng_for(1000 + i as u64);
        let graph = er_graph(n, 1.5 + (i % 4) as f64 * 0.7, &mut rng);
        out.push(Instance {
            name: format!("er-{n}-v{i}"),
            graph,
            motif,
            seed: i as u64,
        });
    }
    for i in 0..50usize {
        let idx = 50 + i;
        let motif = motif_for(idx);
        let cap = if motif.n() >= 5 { 80 } else { 200 };
        let n = (20 + (i * 180) / 50).min(cap);
        let graph = gen_chung_lu(n, 2.5 + (i % 3) as f64, idx as u64).unwrap();
        out.push(Instance {
            name: format!("cl-{n}-v{i}"),
            graph,
            motif,
            seed: idx as u64,
        });
    }
    for i in 0..40usize {
        let idx = 100 + i;
        let motif = motif_for(idx);
        let cap = if motif.n() >= 5 { 80 } else { 200 };
        let n = ((20 + (i * 180) / 40).min(cap) / 4) * 4;
        let graph = gen_chung_lu_households(n, 4.0 + (i % 3) as f64, 4, idx as u64).unwrap();
        out.push(Instance {
            name: format!("clh-{n}-v{i}"),
            graph,
            motif,
            seed: idx as u64,
        });
    }
    for i in 0..30usize {
        let idx = 140 + i;
        let motif = motif_for(idx);
        let cap = if motif.n() >= 5 { 80 } else { 200 };
        let n = ((24 + (i * 176) / 30).min(cap) / 4) * 4;
        let graph = gen_sbm(n, 4.0 + (i % 3) as f64, &sbm_default_matrix(), idx as u64).unwrap();
        out.push(Instance {
            name: format!("sb-{n}-v{i}"),
            graph,
            motif,
            seed: idx as u64,
        });
    }
    for i in 0..30usize {
        let idx = 170 + i;
        let (d, s, l) = TREE_TRIPLES[i % TREE_TRIPLES.len()];
        let graph = gen_tree_paths(d, s, l, idx as u64).unwrap();
        out.push(Instance {
            name: format!("tree-{d}-{s}-{l}-v{i}"),
            graph,
            motif: motif_for(idx),
            seed: idx as u64,
        });
    }
    out
}

/// Twenty small corpus instances with motifs of at most four vertices,
/// used for the all-configurations pass.
fn subset_indices(corpus: &[Instance]) -> Vec<usize> {
    let picked: Vec<usize> = corpus
        .iter()
        .enumerate()
        .filter(|(_, inst)| inst.motif.n() <= 4 && inst.graph.n() <= 64)
        .map(|(i, _)| i)
        .take(20)
        .collect();
    assert_eq!(picked.len(), 20, "corpus must contain 20 small instances");
    picked
}

fn all_configs() -> Vec<PipelineConfig> {
    let mut out = Vec::new();
    for &orientation in &SWEEP_ORIENTATIONS {
        for &augmentation in &SWEEP_AUGMENTATIONS {
            for &prioritization in &SWEEP_PRIORITIZATIONS {
                for &combine in &SWEEP_COMBINES {
                    let mut cfg = PipelineConfig {
                        combine,
                        ..PipelineConfig::default()
                    };
                    cfg.color.orientation = orientation;
                    cfg.color.augmentation = augmentation;
                    cfg.color.prioritization = prioritization;
                    out.push(cfg);
                }
            }
        }
    }
    assert_eq!(out.len(), 24);
    out
}

#[test]
fn criterion_01_pipeline_matches_baseline_on_corpus() {
    let start = Instant::now();
    let corpus = corpus();
    assert_eq!(corpus.len(), 200);
    for inst in &corpus {
        let expected = baseline_count(&inst.graph, &inst.motif).unwrap();
        let cfg = PipelineConfig {
            seed: inst.seed,
            ..PipelineConfig::default()
        };
        let (got, _) = run_pipeline(&inst.graph, &inst.motif, &cfg).unwrap();
        assert_eq!(got, expected, "default config mismatch on {}", inst.name);
    }
    let mut config_runs = 0;
    for &idx in &subset_indices(&corpus) {
        let inst = &corpus[idx];
        let expected = baseline_count(&inst.graph, &inst.motif).unwrap();
        for mut cfg in all_configs() {
            cfg.seed = inst.seed;
            let (got, _) = run_pipeline(&inst.graph, &inst.motif, &cfg).unwrap();
            assert_eq!(
                got, expected,
                "{} under {}/{}/{}/{}",
                inst.name,
                cfg.color.orientation,
                cfg.color.augmentation,
                cfg.color.prioritization,
                cfg.combine
            );
            config_runs += 1;
        }
    }
    assert_eq!(config_runs, 480);
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(600),
        "runtime budget exceeded: {elapsed:?}"
    );
    println!(
        "criterion 1 (pipeline = baseline, 200 instances + 24 configs x 20 subset): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_02_p_centered_check_matches_exhaustive_oracle() {
    let mut rng = rng_for(0xacce);
    let mut checked = 0;
    let mut mismatches = 0;
    while checked < 500 {
        let n = rng.gen_range(2..=8);
        let g = er_graph(n, rng.gen_range(1.0..3.5), &mut rng);
        let coloring = random_coloring(n, rng.gen_range(1..=n), &mut rng);
        for p in 2..=4 {
            if is_p_centered(&g, &coloring, p) != exhaustive_p_centered(&g, &coloring, p) {
                mismatches += 1;
            }
        }
        checked += 1;
    }
    assert_eq!(mismatches, 0);
    println!(
        "criterion 2 (p-centered check vs exhaustive definition, {checked} colorings x p in 2..4): PASS"
    );
}

#[test]
fn criterion_03_decompositions_vertical_and_shallow_on_corpus() {
    // Walks the same colorings criterion 1 processes (same configs, same
    // seeds) and validates every decomposition of every color set.
    let corpus = corpus();
    let walk = |inst: &Instance, cfg: &PipelineConfig| -> u64 {
        let p = inst.motif.n() + 1;
        let (coloring, _) =
            compute_p_centered_coloring(&inst.graph, p, &cfg.color, cfg.seed).unwrap();
        let h_eff = inst.motif.n().min(coloring.size());
        let mut sets = 0;
        let mut cursor = ColorSetCursor::new(&inst.graph, &coloring, h_eff);
        while cursor.advance() {
            sets += 1;
            for comp in cursor.components() {
                let tdd = treedepth_decomposition(&inst.graph, &comp, &coloring).unwrap();
                tdd.validate(&inst.graph).unwrap();
                if let Err(msg) = check_decomposition(&inst.graph, &tdd, cursor.current().len()) {
                    panic!("{}: {msg}", inst.name);
                }
            }
        }
        sets
    };
    let mut sets_checked = 0u64;
    for inst in &corpus {
        let cfg = PipelineConfig {
            seed: inst.seed,
            ..PipelineConfig::default()
        };
        sets_checked += walk(inst, &cfg);
    }
    for &idx in &subset_indices(&corpus) {
        let inst = &corpus[idx];
        for mut cfg in all_configs() {
            cfg.seed = inst.seed;
            sets_checked += walk(inst, &cfg);
        }
    }
    println!(
        "criterion 3 (all induced edges vertical, height <= |set|, {sets_checked} sets): PASS"
    );
}

#[test]
fn criterion_04_automorphism_identities() {
    for n in [3usize, 4, 5] {
        let h = motif(&format!("path:{n}"));
        let (count, _) = run_pipeline(&h, &h, &PipelineConfig::default()).unwrap();
        assert_eq!(count, 2, "path on {n} vertices");
    }
    for n in [4usize, 5] {
        let h = motif(&format!("star:{n}"));
        let expected: u64 = (1..n as u64).product();
        let (count, _) = run_pipeline(&h, &h, &PipelineConfig::default()).unwrap();
        assert_eq!(count, expected, "star on {n} vertices");
    }
    println!("criterion 4 (count(P_n,P_n)=2, count(S_n,S_n)=(n-1)!): PASS");
}

#[test]
fn criterion_05_combine_methods_agree_with_exact_color_counts() {
    for i in 0..50usize {
        let mut rng = rng_for(5000 + i as u64);
        let g = match i % 3 {
            0 => er_graph(10 + i % 10, 2.2, &mut rng),
            1 => gen_chung_lu(14 + i % 7, 2.5, i as u64).unwrap(),
            _ => gen_tree_paths(2, 1 + (i % 2) as u32, 2, i as u64).unwrap(),
        };
        let h = motif(["path:3", "path:4", "star:4"][i % 3]);
        let (coloring, _) =
            compute_p_centered_coloring(&g, h.n() + 1, &ColorConfig::default(), i as u64).unwrap();
        let (ie, _) = count_inclusion_exclusion(&g, &coloring, &h).unwrap();
        let (hy, _) = count_hybrid(&g, &coloring, &h).unwrap();
        let h_eff = h.n().min(coloring.size());
        let mut exact_sum = 0u64;
        for set in enumerate_color_sets(coloring.size(), h_eff) {
            exact_sum += exact_color_count(&g, &coloring, &h, &set).unwrap();
        }
        assert_eq!(ie, hy, "instance {i}");
        assert_eq!(ie, exact_sum, "instance {i}");
    }
    println!("criterion 5 (inclusion-exclusion = hybrid = sum of exact color counts, 50 instances): PASS");
}

#[test]
fn criterion_06_orientation_bounds() {
    let mut rng = rng_for(0x0b1e47);
    for i in 0..50usize {
        let g = if i % 2 == 0 {
            let n = rng.gen_range(8..60);
            er_graph(n, rng.gen_range(1.5..5.0), &mut rng)
        } else {
            gen_chung_lu(rng.gen_range(12..60), rng.gen_range(2.0..5.0), i as u64).unwrap()
        };
        let d = naive_degeneracy(&g);
        assert_eq!(orient_degeneracy(&g).max_indegree(), d, "graph {i}");
        let sandpile = orient_sandpile(&g);
        assert!(sandpile.is_acyclic(), "graph {i}");
        assert!(
            sandpile.max_indegree() <= 2 * d,
            "graph {i}: sandpile indegree {} vs degeneracy {d}",
            sandpile.max_indegree()
        );
    }
    println!("criterion 6 (degeneracy indegree exact, sandpile acyclic within 2x bound, 50 graphs): PASS");
}

fn desk_instances(n: usize, seed_base: u64) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for i in 0..3u64 {
        out.push((
            format!("clh-{n}-s{i}"),
            gen_chung_lu_households(n, 6.0, 4, seed_base + i).unwrap(),
        ));
    }
    for i in 0..3u64 {
        out.push((
            format!("sb-{n}-s{i}"),
            gen_sbm(n, 6.0, &sbm_default_matrix(), seed_base + i).unwrap(),
        ));
    }
    out
}

#[test]
fn criterion_07_coloring_option_directions() {
    let instances = desk_instances(256, 1);
    let p = 5;

    // (a) tfa needs fewer augmentation loop iterations than dtfa on average.
    let mean_iters = |aug: Augmentation| -> f64 {
        let mut total = 0u32;
        for (_, g) in &instances {
            let cfg = ColorConfig {
                augmentation: aug,
                ..ColorConfig::default()
            };
            total += compute_p_centered_coloring(g, p, &cfg, 0).unwrap().1.iterations;
        }
        f64::from(total) / instances.len() as f64
    };
    let tfa = mean_iters(Augmentation::Tfa);
    let dtfa = mean_iters(Augmentation::Dtfa);
    assert!(tfa < dtfa, "mean iterations: tfa {tfa} vs dtfa {dtfa}");

    // (b) merging and recoloring shrink the greedy coloring substantially.
    let mut reductions = Vec::new();
    for (_, g) in &instances {
        for prioritization in [
            Prioritization::LowDegree,
            Prioritization::HighDegree,
            Prioritization::Dsatur,
        ] {
            let cfg = ColorConfig {
                prioritization,
                ..ColorConfig::default()
            };
            let (_, stats) = compute_p_centered_coloring(g, p, &cfg, 0).unwrap();
            reductions
                .push(1.0 - stats.colors_final as f64 / stats.colors_after_loop as f64);
        }
    }
    reductions.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = reductions[reductions.len() / 2];
    assert!(median >= 0.25, "median reduction {median:.3}");

    // (c) low-degree prioritization beats high-degree on most runs.
    let mut low_wins = 0;
    let mut runs = 0;
    for seed in [0u64, 1] {
        for (_, g) in &instances {
            let colors = |prioritization| {
                let cfg = ColorConfig {
                    prioritization,
                    ..ColorConfig::default()
                };
                compute_p_centered_coloring(g, p, &cfg, seed).unwrap().0.size()
            };
            if colors(Prioritization::LowDegree) <= colors(Prioritization::HighDegree) {
                low_wins += 1;
            }
            runs += 1;
        }
    }
    assert!(
        2 * low_wins > runs,
        "low-degree won only {low_wins} of {runs} runs"
    );
    println!(
        "criterion 7 (tfa {tfa:.2} < dtfa {dtfa:.2} iterations; median postprocess reduction {:.0}%; low-degree wins {low_wins}/{runs}): PASS",
        median * 100.0
    );
}

#[test]
fn criterion_08_max_splitting_needs_fewer_joins() {
    let instances = desk_instances(128, 1);
    let h = motif("path:4");
    let mut joins_min = Vec::new();
    let mut joins_max = Vec::new();
    for (idx, (name, g)) in instances.iter().enumerate() {
        let (coloring, _) =
            compute_p_centered_coloring(g, h.n() + 1, &ColorConfig::default(), idx as u64)
                .unwrap();
        let target = coloring.size() + 6;
        let colorings = [coloring];
        let rows_min = run_split_experiment(
            g,
            &h,
            &colorings,
            target,
            SplitHeuristic::Min,
            3,
            idx as u64,
        )
        .unwrap();
        let rows_max = run_split_experiment(
            g,
            &h,
            &colorings,
            target,
            SplitHeuristic::Max,
            3,
            idx as u64,
        )
        .unwrap();
        let count_min: Vec<u64> = rows_min.iter().map(|r| r.count).collect();
        let count_max: Vec<u64> = rows_max.iter().map(|r| r.count).collect();
        assert!(
            count_min.iter().chain(&count_max).all(|&c| c == count_min[0]),
            "{name}: split heuristic changed the count"
        );
        joins_min.extend(rows_min.iter().map(|r| r.joins as f64));
        joins_max.extend(rows_max.iter().map(|r| r.joins as f64));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let mean_min = mean(&joins_min);
    let mean_max = mean(&joins_max);
    assert!(
        mean_max <= 0.9 * mean_min,
        "mean joins: max-split {mean_max:.0} vs min-split {mean_min:.0}"
    );
    println!(
        "criterion 8 (max-split joins {mean_max:.0} <= 90% of min-split {mean_min:.0}, 6 instances x 3 reps): PASS"
    );
}

#[test]
fn criterion_09_per_operation_growth_within_cubic_prediction() {
    let g = gen_chung_lu_households(128, 6.0, 4, 1).unwrap();
    let (coloring, _) = compute_p_centered_coloring(&g, 6, &ColorConfig::default(), 0).unwrap();
    let mut last = Vec::new();
    let mut ok = false;
    for _attempt in 0..3 {
        let rows = run_treedepth_experiment(&g, &coloring).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.labelings).collect::<Vec<_>>(),
            vec![57, 116, 205]
        );
        if rows[1].observed_ratio <= rows[1].predicted_ratio
            && rows[2].observed_ratio <= rows[2].predicted_ratio
        {
            ok = true;
            last = rows;
            break;
        }
        last = rows;
    }
    assert!(
        ok,
        "observed per-op ratios {:.3}/{:.3} exceed predictions {:.3}/{:.3}",
        last[1].observed_ratio,
        last[2].observed_ratio,
        last[1].predicted_ratio,
        last[2].predicted_ratio
    );
    println!(
        "criterion 9 (per-op growth {:.2}x/{:.2}x within predicted {:.2}x/{:.2}x; labelings 57/116/205): PASS",
        last[1].observed_ratio,
        last[2].observed_ratio,
        last[1].predicted_ratio,
        last[2].predicted_ratio
    );
}

#[test]
fn criterion_10_tree_scaling_smoke() {
    let h = build_motif(&MotifSpec::Family {
        kind: MotifKind::Star,
        order: 4,
    })
    .unwrap();
    let mut ratios = Vec::new();
    let mut final_match = None;
    for s in [2u32, 4, 8] {
        let g = gen_tree_paths(8, s, 1, 0).unwrap();
        let (p_count, p_metrics) = run_pipeline(&g, &h, &PipelineConfig::default()).unwrap();
        let cfg = PipelineConfig {
            engine: Engine::Baseline,
            ..PipelineConfig::default()
        };
        let (b_count, b_metrics) = run_pipeline(&g, &h, &cfg).unwrap();
        assert_eq!(p_count, b_count, "s = {s}");
        let ratio =
            diff_sum_ratio(p_metrics.total_ns as f64, b_metrics.total_ns as f64).unwrap();
        ratios.push((s, ratio));
        if s == 8 {
            final_match = Some((p_count, g.n()));
        }
    }
    let (count, n) = final_match.unwrap();
    let trend: Vec<String> = ratios
        .iter()
        .map(|(s, r)| format!("s={s}: {r:+.3}"))
        .collect();
    // The time ratio trend is reported, not gated; only the s = 8 match is.
    println!(
        "criterion 10 (T_8,8,1 with {n} vertices: pipeline = baseline = {count}; time diff/sum trend {}): PASS",
        trend.join(", ")
    );
}
