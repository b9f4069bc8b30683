//! End-to-end counting pipeline: color the host, then decompose, compute,
//! and combine, or fall back to the backtracking engine for ground truth.
//!
//! `run_pipeline` is the single entry point the command line and the
//! experiment harness share. It fixes p = |H| + 1 so that every motif-sized
//! vertex set induces a centered subgraph under the computed coloring.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::baseline;
use crate::color::{compute_p_centered_coloring, ColorConfig, ColorStats};
use crate::combine::{count_hybrid, count_inclusion_exclusion, CountStats};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern;

/// How per-color-set counts are merged into the final total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CombineMethod {
    InclusionExclusion,
    Hybrid,
}

impl FromStr for CombineMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inclusion-exclusion" => Ok(CombineMethod::InclusionExclusion),
            "hybrid" => Ok(CombineMethod::Hybrid),
            _ => Err(Error::InvalidParams(format!(
                "unknown combine method '{s}', expected inclusion-exclusion or hybrid"
            ))),
        }
    }
}

impl fmt::Display for CombineMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombineMethod::InclusionExclusion => write!(f, "inclusion-exclusion"),
            CombineMethod::Hybrid => write!(f, "hybrid"),
        }
    }
}

/// Which counting engine answers the query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Pipeline,
    Baseline,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pipeline" => Ok(Engine::Pipeline),
            "baseline" => Ok(Engine::Baseline),
            _ => Err(Error::InvalidParams(format!(
                "unknown engine '{s}', expected pipeline or baseline"
            ))),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::Pipeline => write!(f, "pipeline"),
            Engine::Baseline => write!(f, "baseline"),
        }
    }
}

/// Everything a single counting run needs besides the two graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub color: ColorConfig,
    pub combine: CombineMethod,
    pub engine: Engine,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            color: ColorConfig::default(),
            combine: CombineMethod::InclusionExclusion,
            engine: Engine::Pipeline,
            seed: 0,
        }
    }
}

/// Instrumentation for one counting run. Times are wall-clock nanoseconds.
/// Baseline runs report the total in `compute_ns` and zero elsewhere.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunMetrics {
    pub count: u64,
    pub colors_used: usize,
    pub iterations: u32,
    pub color_ns: u128,
    pub decompose_ns: u128,
    pub compute_ns: u128,
    pub combine_ns: u128,
    pub total_ns: u128,
    pub joins: u64,
    pub forgets: u64,
    pub table_peak: usize,
    pub sets: usize,
    pub components_counted: usize,
    pub components_skipped: usize,
    pub color_stats: Option<ColorStats>,
}

impl RunMetrics {
    fn from_parts(count: u64, color_ns: u128, cstats: ColorStats, counts: CountStats) -> Self {
        RunMetrics {
            count,
            colors_used: cstats.colors_final,
            iterations: cstats.iterations,
            color_ns,
            decompose_ns: counts.decompose_ns,
            compute_ns: counts.dp_ns,
            combine_ns: counts.combine_ns,
            total_ns: color_ns + counts.decompose_ns + counts.dp_ns + counts.combine_ns,
            joins: counts.dp.joins,
            forgets: counts.dp.forgets,
            table_peak: counts.dp.table_peak,
            sets: counts.sets,
            components_counted: counts.components_counted,
            components_skipped: counts.components_skipped,
            color_stats: Some(cstats),
        }
    }
}

/// Count subgraphs of `g` isomorphic to `h` with the configured engine.
pub fn run_pipeline(g: &Graph, h: &Graph, cfg: &PipelineConfig) -> Result<(u64, RunMetrics)> {
    pattern::validate_motif(h)?;
    match cfg.engine {
        Engine::Baseline => {
            let start = Instant::now();
            let count = baseline::baseline_count(g, h)?;
            let elapsed = start.elapsed().as_nanos();
            let metrics = RunMetrics {
                count,
                compute_ns: elapsed,
                total_ns: elapsed,
                ..RunMetrics::default()
            };
            Ok((count, metrics))
        }
        Engine::Pipeline => {
            let p = h.n() + 1;
            let start = Instant::now();
            let (coloring, cstats) = compute_p_centered_coloring(g, p, &cfg.color, cfg.seed)?;
            let color_ns = start.elapsed().as_nanos();
            let (count, counts) = match cfg.combine {
                CombineMethod::InclusionExclusion => count_inclusion_exclusion(g, &coloring, h)?,
                CombineMethod::Hybrid => count_hybrid(g, &coloring, h)?,
            };
            let metrics = RunMetrics::from_parts(count, color_ns, cstats, counts);
            Ok((count, metrics))
        }
    }
}

/// Normalized difference (a - b) / (a + b), in [-1, 1].
///
/// Errors when a + b = 0 since the ratio is undefined there.
pub fn diff_sum_ratio(a: f64, b: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParams(
            "diff/sum ratio needs finite inputs".into(),
        ));
    }
    let sum = a + b;
    if sum == 0.0 {
        return Err(Error::InvalidParams(
            "diff/sum ratio undefined when a + b = 0".into(),
        ));
    }
    Ok((a - b) / sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::graph::{build_motif, MotifKind, MotifSpec};

    fn path(order: usize) -> Graph {
        build_motif(&MotifSpec::Family { kind: MotifKind::Path, order }).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["inclusion-exclusion", "hybrid"] {
            assert_eq!(s.parse::<CombineMethod>().unwrap().to_string(), s);
        }
        for s in ["pipeline", "baseline"] {
            assert_eq!(s.parse::<Engine>().unwrap().to_string(), s);
        }
        assert!("IE".parse::<CombineMethod>().is_err());
        assert!("exact".parse::<Engine>().is_err());
    }

    #[test]
    fn path_in_itself_counts_both_traversals() {
        let h = path(4);
        let (count, metrics) = run_pipeline(&h, &h, &PipelineConfig::default()).unwrap();
        assert_eq!(count, 2);
        assert_eq!(metrics.count, 2);
        // A centered coloring of the four-path needs at least its treedepth.
        assert!(metrics.colors_used >= 3);
    }

    #[test]
    fn edgeless_host_has_no_embeddings() {
        let g = Graph::new(9);
        let h = path(3);
        let (count, _) = run_pipeline(&g, &h, &PipelineConfig::default()).unwrap();
        assert_eq!(count, 0);
    }

    #[test]
    fn tree_host_matches_baseline() {
        let g = gen::gen_tree_paths(4, 2, 1, 0).unwrap();
        let h = build_motif(&MotifSpec::Family { kind: MotifKind::Star, order: 4 }).unwrap();
        let expected = baseline::baseline_count(&g, &h).unwrap();
        for combine in [CombineMethod::InclusionExclusion, CombineMethod::Hybrid] {
            let cfg = PipelineConfig {
                combine,
                ..PipelineConfig::default()
            };
            let (count, metrics) = run_pipeline(&g, &h, &cfg).unwrap();
            assert_eq!(count, expected);
            assert!(metrics.joins > 0 || count == 0);
        }
    }

    #[test]
    fn baseline_engine_reports_only_compute_time() {
        let g = gen::gen_chung_lu(30, 2.5, 11).unwrap();
        let h = path(3);
        let cfg = PipelineConfig {
            engine: Engine::Baseline,
            ..PipelineConfig::default()
        };
        let (count, metrics) = run_pipeline(&g, &h, &cfg).unwrap();
        assert_eq!(count, baseline::baseline_count(&g, &h).unwrap());
        assert_eq!(metrics.colors_used, 0);
        assert_eq!(metrics.color_ns, 0);
        assert_eq!(metrics.total_ns, metrics.compute_ns);
    }

    #[test]
    fn motif_validation_front_loads_errors() {
        let g = path(5);
        assert!(run_pipeline(&g, &Graph::new(1), &PipelineConfig::default()).is_err());
        let mut disconnected = Graph::new(4);
        disconnected.add_edge(0, 1).unwrap();
        disconnected.add_edge(2, 3).unwrap();
        assert!(run_pipeline(&g, &disconnected, &PipelineConfig::default()).is_err());
    }

    #[test]
    fn diff_sum_ratio_examples() {
        assert_eq!(diff_sum_ratio(3.0, 1.0).unwrap(), 0.5);
        assert_eq!(diff_sum_ratio(7.0, 7.0).unwrap(), 0.0);
        assert_eq!(diff_sum_ratio(0.0, 5.0).unwrap(), -1.0);
        assert!(diff_sum_ratio(0.0, 0.0).is_err());
        assert!(diff_sum_ratio(f64::NAN, 1.0).is_err());
        let ab = diff_sum_ratio(2.0, 6.0).unwrap();
        let ba = diff_sum_ratio(6.0, 2.0).unwrap();
        assert_eq!(ab, -ba);
        assert!(ab.abs() <= 1.0);
    }

    #[test]
    fn seeds_only_change_metrics_not_counts() {
        let g = gen::gen_sbm(40, 5.0, &gen::sbm_default_matrix(), 5).unwrap();
        let h = path(4);
        let mut counts = Vec::new();
        for seed in [0, 1, 99] {
            let cfg = PipelineConfig {
                seed,
                ..PipelineConfig::default()
            };
            counts.push(run_pipeline(&g, &h, &cfg).unwrap().0);
        }
        assert_eq!(counts[0], counts[1]);
        assert_eq!(counts[1], counts[2]);
    }
}
