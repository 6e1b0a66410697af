//! Coupling metrics (fan-out, fan-in, instability), the module-object
//! pattern census and the regex file-format classifier.

mod classify;
mod coupling;
mod patterns;

pub use classify::{classify_file_format, FileFormat, AMD_PATTERNS, CJS_PATTERNS, ES6_PATTERNS};
pub use coupling::{
    compare_snapshots, compute_module_metrics, es5_view, es6_view, parse_es6_view, project_metrics,
    Access, DependenceView, FeatureKey, Granularity, Import, MetricsError, ModuleDelta,
    ModuleMetrics, ProjectMetrics, SnapshotDelta,
};
pub use patterns::{
    census, census_files, classify_module_object, Census, CensusEntry, ClassCount, PatternClass,
};
