//! Seeded Monte Carlo designs and the experiment drivers built on them.

pub mod example;
pub mod experiment;
pub mod generators;
pub mod rng;

pub use example::{run_example, ExampleRun};
pub use experiment::{
    find_threshold_k, median_threshold_k, replicate, run_figure_experiment, Design, ExperimentConfig,
    ExperimentResult, Measure, SeriesPoint,
};
pub use generators::{
    gen_example_dataset, gen_gamma_correlated, gen_independent_normals, ExampleDataset, GammaLatents,
    GeneratedData, NormalParams, X32Form,
};
