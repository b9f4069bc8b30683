//! Experiment drivers: the configuration sweep, the class-splitting
//! experiment, and the decomposition-size scaling experiment.
//!
//! Each driver returns structured rows and has a CSV writer with a
//! versioned header line. Timing columns always carry an `_ns` suffix so
//! downstream tooling can strip them before comparing runs byte for byte.

use std::io::Write;
use std::time::Instant;

use crate::color::check::is_p_centered;
use crate::color::{split_color_class, Augmentation, Coloring, Orientation, Prioritization};
use crate::combine::count_inclusion_exclusion;
use crate::decompose::{treedepth_decomposition, ColorSetCursor};
use crate::error::{Error, Result};
use crate::gen::rng_for;
use crate::graph::{build_motif, Graph, MotifKind, MotifSpec};
use crate::pattern::{count_in_decomposition, pattern_labeling_count};
use crate::pipeline::{diff_sum_ratio, run_pipeline, CombineMethod, PipelineConfig, RunMetrics};
use crate::color::SplitHeuristic;

pub const SWEEP_ORIENTATIONS: [Orientation; 2] = [Orientation::Degeneracy, Orientation::Sandpile];
pub const SWEEP_AUGMENTATIONS: [Augmentation; 2] = [Augmentation::Tfa, Augmentation::Dtfa];
pub const SWEEP_PRIORITIZATIONS: [Prioritization; 3] = [
    Prioritization::LowDegree,
    Prioritization::HighDegree,
    Prioritization::Dsatur,
];
pub const SWEEP_COMBINES: [CombineMethod; 2] =
    [CombineMethod::InclusionExclusion, CombineMethod::Hybrid];

/// A named host graph fed to the sweep.
#[derive(Debug, Clone)]
pub struct SweepInstance {
    pub name: String,
    pub graph: Graph,
}

/// One sweep cell: an instance counted under one configuration.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub instance: String,
    pub orientation: Orientation,
    pub augmentation: Augmentation,
    pub prioritization: Prioritization,
    pub combine: CombineMethod,
    pub rep: u32,
    pub seed: u64,
    pub metrics: RunMetrics,
}

fn check_name(name: &str) -> Result<()> {
    if name.is_empty() || name.contains(',') || name.contains('\n') {
        return Err(Error::InvalidParams(format!(
            "instance name '{name}' must be nonempty and free of commas and newlines"
        )));
    }
    Ok(())
}

/// Count `motif` in every instance under all 24 configurations
/// (orientation x augmentation x prioritization x combine), `reps`
/// repetitions each. Cell seeds are derived from `base_seed` so reruns
/// with the same seed are reproducible.
pub fn run_config_sweep(
    instances: &[SweepInstance],
    motif: &Graph,
    reps: u32,
    base_seed: u64,
) -> Result<Vec<SweepRow>> {
    if instances.is_empty() {
        return Err(Error::InvalidParams("sweep needs at least one instance".into()));
    }
    if reps == 0 {
        return Err(Error::InvalidParams("sweep needs at least one repetition".into()));
    }
    for inst in instances {
        check_name(&inst.name)?;
    }
    let mut rows = Vec::new();
    let mut cell: u64 = 0;
    for inst in instances {
        for &orientation in &SWEEP_ORIENTATIONS {
            for &augmentation in &SWEEP_AUGMENTATIONS {
                for &prioritization in &SWEEP_PRIORITIZATIONS {
                    for &combine in &SWEEP_COMBINES {
                        for rep in 0..reps {
                            let seed = base_seed.wrapping_add(cell);
                            cell += 1;
                            let mut cfg = PipelineConfig {
                                combine,
                                seed,
                                ..PipelineConfig::default()
                            };
                            cfg.color.orientation = orientation;
                            cfg.color.augmentation = augmentation;
                            cfg.color.prioritization = prioritization;
                            let (_, metrics) = run_pipeline(&inst.graph, motif, &cfg)?;
                            rows.push(SweepRow {
                                instance: inst.name.clone(),
                                orientation,
                                augmentation,
                                prioritization,
                                combine,
                                rep,
                                seed,
                                metrics,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(rows)
}

pub const SWEEP_CSV_VERSION: &str = "# sweep-csv v1";

/// Write sweep rows as CSV. Columns ending in `_ns` are wall-clock timings
/// and the only run-to-run nondeterminism in the output.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: &mut W) -> Result<()> {
    writeln!(out, "{SWEEP_CSV_VERSION}")?;
    writeln!(
        out,
        "instance,orientation,augmentation,prioritization,combine,rep,seed,\
         count,colors_used,iterations,joins,forgets,table_peak,sets,\
         components_counted,components_skipped,\
         color_ns,decompose_ns,compute_ns,combine_ns,total_ns"
    )?;
    for r in rows {
        let m = &r.metrics;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.instance,
            r.orientation,
            r.augmentation,
            r.prioritization,
            r.combine,
            r.rep,
            r.seed,
            m.count,
            m.colors_used,
            m.iterations,
            m.joins,
            m.forgets,
            m.table_peak,
            m.sets,
            m.components_counted,
            m.components_skipped,
            m.color_ns,
            m.decompose_ns,
            m.compute_ns,
            m.combine_ns,
            m.total_ns
        )?;
    }
    Ok(())
}

/// Which configuration axis a pairwise comparison varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Orientation,
    Augmentation,
    Prioritization,
    Combine,
}

/// One comparison between two sweep cells differing only on one axis.
#[derive(Debug, Clone)]
pub struct PairwiseRatio {
    pub instance: String,
    pub rep: u32,
    pub left: String,
    pub right: String,
    pub ratio: f64,
}

fn axis_key(row: &SweepRow, axis: SweepAxis) -> (String, String) {
    // (varied value, held-fixed coordinates) for grouping.
    let o = row.orientation.to_string();
    let a = row.augmentation.to_string();
    let p = row.prioritization.to_string();
    let c = row.combine.to_string();
    match axis {
        SweepAxis::Orientation => (o, format!("{a}|{p}|{c}")),
        SweepAxis::Augmentation => (a, format!("{o}|{p}|{c}")),
        SweepAxis::Prioritization => (p, format!("{o}|{a}|{c}")),
        SweepAxis::Combine => (c, format!("{o}|{a}|{p}")),
    }
}

/// Diff/sum ratios between cells that agree on instance, repetition, and
/// every configuration axis except `axis`. Pairs whose metric values sum
/// to zero are omitted since the ratio is undefined there.
pub fn pairwise_diff_sum(
    rows: &[SweepRow],
    axis: SweepAxis,
    metric: fn(&RunMetrics) -> f64,
) -> Vec<PairwiseRatio> {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<(String, u32, String), Vec<(String, f64)>> = BTreeMap::new();
    for row in rows {
        let (varied, fixed) = axis_key(row, axis);
        groups
            .entry((row.instance.clone(), row.rep, fixed))
            .or_default()
            .push((varied, metric(&row.metrics)));
    }
    let mut out = Vec::new();
    for ((instance, rep, _), mut members) in groups {
        members.sort_by(|x, y| x.0.cmp(&y.0));
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if let Ok(ratio) = diff_sum_ratio(members[i].1, members[j].1) {
                    out.push(PairwiseRatio {
                        instance: instance.clone(),
                        rep,
                        left: members[i].0.clone(),
                        right: members[j].0.clone(),
                        ratio,
                    });
                }
            }
        }
    }
    out
}

/// One padded-coloring counting run in the splitting experiment.
#[derive(Debug, Clone)]
pub struct SplitRow {
    pub coloring: usize,
    pub rep: u32,
    pub heuristic: SplitHeuristic,
    pub colors_before: usize,
    pub colors_after: usize,
    pub count: u64,
    pub joins: u64,
    pub forgets: u64,
    pub decompose_ns: u128,
    pub compute_ns: u128,
    pub combine_ns: u128,
}

/// Pad each coloring to exactly `target` classes by repeated splitting with
/// `heuristic`, then count `motif` by inclusion-exclusion over the padded
/// coloring. Errors if a coloring starts above `target` or runs out of
/// splittable classes before reaching it.
pub fn run_split_experiment(
    g: &Graph,
    motif: &Graph,
    colorings: &[Coloring],
    target: usize,
    heuristic: SplitHeuristic,
    reps: u32,
    seed: u64,
) -> Result<Vec<SplitRow>> {
    if colorings.is_empty() {
        return Err(Error::InvalidParams("split experiment needs at least one coloring".into()));
    }
    if reps == 0 {
        return Err(Error::InvalidParams("split experiment needs at least one repetition".into()));
    }
    let mut rows = Vec::new();
    for (ci, base) in colorings.iter().enumerate() {
        if base.size() > target {
            return Err(Error::InvalidParams(format!(
                "coloring {ci} already has {} classes, above the target {target}",
                base.size()
            )));
        }
        for rep in 0..reps {
            let mut rng = rng_for(seed.wrapping_add((ci as u64) * u64::from(reps) + u64::from(rep)));
            let mut padded = base.clone();
            while padded.size() < target {
                padded = split_color_class(&padded, heuristic, &mut rng)?;
            }
            let (count, stats) = count_inclusion_exclusion(g, &padded, motif)?;
            rows.push(SplitRow {
                coloring: ci,
                rep,
                heuristic,
                colors_before: base.size(),
                colors_after: padded.size(),
                count,
                joins: stats.dp.joins,
                forgets: stats.dp.forgets,
                decompose_ns: stats.decompose_ns,
                compute_ns: stats.dp_ns,
                combine_ns: stats.combine_ns,
            });
        }
    }
    Ok(rows)
}

pub const SPLIT_CSV_VERSION: &str = "# split-csv v1";

pub fn write_split_csv<W: Write>(rows: &[SplitRow], out: &mut W) -> Result<()> {
    writeln!(out, "{SPLIT_CSV_VERSION}")?;
    writeln!(
        out,
        "coloring,rep,heuristic,colors_before,colors_after,count,joins,forgets,\
         decompose_ns,compute_ns,combine_ns"
    )?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.coloring,
            r.rep,
            r.heuristic,
            r.colors_before,
            r.colors_after,
            r.count,
            r.joins,
            r.forgets,
            r.decompose_ns,
            r.compute_ns,
            r.combine_ns
        )?;
    }
    Ok(())
}

/// Aggregates for one decomposition size in the scaling experiment.
#[derive(Debug, Clone)]
pub struct TdRow {
    pub t: usize,
    pub sets: usize,
    pub components: usize,
    pub count: u64,
    pub joins: u64,
    pub forgets: u64,
    pub compute_ns: u128,
    pub avg_depth: f64,
    pub labelings: u64,
    pub per_op_ns: f64,
    pub predicted_ratio: f64,
    pub observed_ratio: f64,
}

/// Count the three-vertex path over every color set of exactly t classes,
/// t in {3, 4, 5}, and report per-operation cost against the cubic
/// labeling-count prediction, both normalized at t = 3.
///
/// The coloring must be 6-centered so that all three sizes stay within the
/// centered range.
pub fn run_treedepth_experiment(g: &Graph, coloring: &Coloring) -> Result<Vec<TdRow>> {
    if !is_p_centered(g, coloring, 6) {
        return Err(Error::InvalidColoring(
            "decomposition size experiment needs a 6-centered coloring".into(),
        ));
    }
    let motif = build_motif(&MotifSpec::Family { kind: MotifKind::Path, order: 3 })?;
    let mut rows = Vec::new();
    for t in 3..=5usize {
        let mut sets = 0usize;
        let mut components = 0usize;
        let mut count = 0u64;
        let mut joins = 0u64;
        let mut forgets = 0u64;
        let mut compute_ns = 0u128;
        let mut depth_sum = 0u64;
        let mut depth_verts = 0u64;
        let mut cursor = ColorSetCursor::new(g, coloring, t);
        while cursor.advance() {
            if cursor.current().len() != t {
                continue;
            }
            sets += 1;
            for comp in cursor.components() {
                if comp.len() < motif.n() {
                    continue;
                }
                components += 1;
                let tdd = treedepth_decomposition(g, &comp, coloring)?;
                for &v in tdd.vertices() {
                    depth_sum += u64::from(tdd.depth_of(v).unwrap());
                    depth_verts += 1;
                }
                let start = Instant::now();
                let (c, stats) = count_in_decomposition(g, &tdd, &motif)?;
                compute_ns += start.elapsed().as_nanos();
                count = count.checked_add(c).ok_or(Error::CountOverflow)?;
                joins += stats.joins;
                forgets += stats.forgets;
            }
        }
        let ops = joins + forgets;
        if ops == 0 {
            return Err(Error::InvalidParams(format!(
                "no pattern operations at t = {t}; the host is too small for the experiment"
            )));
        }
        rows.push(TdRow {
            t,
            sets,
            components,
            count,
            joins,
            forgets,
            compute_ns,
            avg_depth: depth_sum as f64 / depth_verts as f64,
            labelings: pattern_labeling_count(&motif, t)?,
            per_op_ns: compute_ns as f64 / ops as f64,
            predicted_ratio: 0.0,
            observed_ratio: 0.0,
        });
    }
    let base_labelings = rows[0].labelings as f64;
    let base_per_op = rows[0].per_op_ns;
    for row in &mut rows {
        row.predicted_ratio = row.labelings as f64 / base_labelings;
        row.observed_ratio = row.per_op_ns / base_per_op;
    }
    Ok(rows)
}

pub const TD_CSV_VERSION: &str = "# td-exp-csv v1";

pub fn write_td_csv<W: Write>(rows: &[TdRow], out: &mut W) -> Result<()> {
    writeln!(out, "{TD_CSV_VERSION}")?;
    writeln!(
        out,
        "t,sets,components,count,joins,forgets,labelings,avg_depth,\
         predicted_ratio,compute_ns,per_op_ns,observed_ratio"
    )?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{:.4},{:.6},{},{:.2},{:.6}",
            r.t,
            r.sets,
            r.components,
            r.count,
            r.joins,
            r.forgets,
            r.labelings,
            r.avg_depth,
            r.predicted_ratio,
            r.compute_ns,
            r.per_op_ns,
            r.observed_ratio
        )?;
    }
    Ok(())
}
