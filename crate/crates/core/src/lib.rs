//! Migration of ES5, AMD and CommonJS code to ES6 modules with named
//! imports and exports, driven by a module dependence graph.

pub mod analysis;
pub mod frontend;
pub mod mdg;
pub mod metrics;
pub mod paths;
pub mod transform;

pub use analysis::{
    build_mdg, AnalysisError, AnalysisOptions, Format, FormatChoice, PreconditionViolation,
    Project, ProjectAnalysis,
};
pub use frontend::{Origin, SourceFile, Span};
pub use mdg::{Dependency, Mdg, ModuleFeature, ModuleId, Usage};
pub use metrics::{
    census, classify_file_format, compare_snapshots, es5_view, es6_view, project_metrics, Census,
    FileFormat, PatternClass, ProjectMetrics, SnapshotDelta,
};
pub use transform::{refactor_project, RefactorOutput, TransformReport};
