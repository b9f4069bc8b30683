//! Flat `key = value` run configuration files.
//!
//! Every key is optional and falls back to the default configuration.
//! Unknown keys are rejected rather than ignored so that typos surface
//! immediately instead of silently running with defaults.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::pipeline::PipelineConfig;

const KEYS: &[&str] = &[
    "orientation",
    "augmentation",
    "prioritization",
    "preprocess_high_degree",
    "postprocess_degree_one",
    "recolor_attempts",
    "merge_classes",
    "max_iterations",
    "combine",
    "seed",
];

fn value_error(line: usize, err: Error) -> Error {
    let msg = match err {
        Error::InvalidParams(m) => m,
        other => other.to_string(),
    };
    Error::ConfigValue { line, msg }
}

fn parse_bool(line: usize, value: &str) -> Result<bool> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::ConfigValue {
            line,
            msg: format!("expected true or false, got '{value}'"),
        }),
    }
}

fn parse_int<T: std::str::FromStr>(line: usize, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::ConfigValue {
        line,
        msg: format!("expected an integer, got '{value}'"),
    })
}

/// Parse configuration text. Later lines override earlier ones.
pub fn parse_pipeline_config(text: &str) -> Result<PipelineConfig> {
    let mut cfg = PipelineConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::ConfigValue {
                line,
                msg: format!("expected 'key = value', got '{content}'"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        if !KEYS.contains(&key) {
            return Err(Error::UnknownConfigKey {
                line,
                key: key.to_string(),
            });
        }
        if value.is_empty() {
            return Err(Error::ConfigValue {
                line,
                msg: format!("key '{key}' has an empty value"),
            });
        }
        match key {
            "orientation" => {
                cfg.color.orientation = value
                    .parse()
                    .map_err(|msg| Error::ConfigValue { line, msg })?;
            }
            "augmentation" => {
                cfg.color.augmentation = value
                    .parse()
                    .map_err(|msg| Error::ConfigValue { line, msg })?;
            }
            "prioritization" => {
                cfg.color.prioritization = value
                    .parse()
                    .map_err(|msg| Error::ConfigValue { line, msg })?;
            }
            "preprocess_high_degree" => {
                cfg.color.preprocess_high_degree = parse_bool(line, value)?;
            }
            "postprocess_degree_one" => {
                cfg.color.postprocess_degree_one = parse_bool(line, value)?;
            }
            "recolor_attempts" => {
                cfg.color.recolor_attempts = parse_int(line, value)?;
            }
            "merge_classes" => {
                cfg.color.merge_classes = parse_bool(line, value)?;
            }
            "max_iterations" => {
                let v: u32 = parse_int(line, value)?;
                if v == 0 {
                    return Err(Error::ConfigValue {
                        line,
                        msg: "max_iterations must be at least 1".into(),
                    });
                }
                cfg.color.max_iterations = v;
            }
            "combine" => {
                cfg.combine = value.parse().map_err(|e| value_error(line, e))?;
            }
            "seed" => {
                cfg.seed = parse_int(line, value)?;
            }
            _ => unreachable!("key list and match arms are in sync"),
        }
    }
    Ok(cfg)
}

/// Read and parse a configuration file.
pub fn load_pipeline_config(path: &Path) -> Result<PipelineConfig> {
    parse_pipeline_config(&fs::read_to_string(path)?)
}
