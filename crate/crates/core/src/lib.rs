//! Bottleneck and Wasserstein distances between persistence diagrams, and
//! center diagrams minimizing the largest distance to a collection of inputs.

pub mod center;
pub mod cli;
pub mod distances;
pub mod enclosing;
pub mod error;
pub mod geometry;
pub mod ground;
pub mod instances;
pub mod matching;

pub use center::{
    approx_center, brute_force_center, center2_continuous, center2_no_replacement, center2_with_replacement,
    center_diagrams, eval_center, eval_centers, eval_diagram_center, Algorithm, CenterSolution, Cluster,
    DiagramCenter, Evaluation, Objective, SelectionMode,
};
pub use distances::{augment, bottleneck_distance, wasserstein_distance, AugmentedSet, DiagramCost};
pub use error::{Error, Result};
pub use geometry::{dist_point, AugPoint, Diagram, Metric, Point};
pub use ground::GroundCost;
