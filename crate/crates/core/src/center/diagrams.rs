//! Center persistence diagrams via the augmented point-set problem.

use std::fmt;
use std::str::FromStr;

use super::eval::structure_violations;
use super::{
    approx_with, brute_force_with, eval_diagram_center, exact2_continuous, exact2_no_replacement,
    exact2_with_replacement, CenterSolution, Evaluation, Objective, SelectionMode,
};
use crate::distances::{augment, bottleneck_distance, wasserstein_distance, AugmentedSet, DiagramCost};
use crate::error::{Error, Result};
use crate::geometry::{check_diagrams, AugPoint, Diagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Exact solver for two diagrams under the bottleneck objective.
    Exact2,
    /// Factor-2 approximation for any number of diagrams.
    Approx,
    /// Exhaustive search, small inputs only.
    Brute,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Exact2 => "exact2",
            Algorithm::Approx => "approx",
            Algorithm::Brute => "brute",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Algorithm::Exact2, Algorithm::Approx, Algorithm::Brute]
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramCenter {
    /// Center diagram: the off-diagonal centers.
    pub diagram: Diagram,
    /// Solution of the augmented problem, including diagonal centers.
    pub solution: CenterSolution,
    pub augmented: Vec<AugmentedSet>,
    /// Largest distance from `diagram` to an input, recomputed directly.
    pub objective_value: f64,
    pub algorithm: Algorithm,
}

impl DiagramCenter {
    /// Re-scores the center against `diagrams` and checks the augmented
    /// solution for consistency.
    pub fn verify(&self, diagrams: &[Diagram]) -> Result<Evaluation> {
        let mut eval = eval_diagram_center(&self.diagram, diagrams, self.solution.mode, self.solution.objective)?;
        let sets: Vec<Vec<AugPoint>> = self.augmented.iter().map(|a| a.points.clone()).collect();
        eval.violations
            .extend(structure_violations(&self.solution, &sets, &DiagramCost));
        Ok(eval)
    }
}

/// Computes a center diagram of `diagrams` (at least two).
pub fn center_diagrams(
    diagrams: &[Diagram],
    mode: SelectionMode,
    objective: Objective,
    algorithm: Algorithm,
) -> Result<DiagramCenter> {
    objective.validate()?;
    if diagrams.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least two diagrams, got {}",
            diagrams.len()
        )));
    }
    check_diagrams(diagrams)?;
    if algorithm == Algorithm::Exact2 {
        if diagrams.len() != 2 {
            return Err(Error::AlgorithmMismatch(format!(
                "exact2 handles two diagrams, got {}",
                diagrams.len()
            )));
        }
        if objective != Objective::Bottleneck {
            return Err(Error::AlgorithmMismatch(
                "exact2 supports the bottleneck objective only".into(),
            ));
        }
    }

    let augmented = (0..diagrams.len())
        .map(|i| augment(diagrams, i))
        .collect::<Result<Vec<_>>>()?;
    let sets: Vec<Vec<AugPoint>> = augmented.iter().map(|a| a.points.clone()).collect();

    let solution = if sets[0].is_empty() {
        super::assemble(&sets, &DiagramCost, Vec::new(), mode, objective)
    } else {
        match algorithm {
            Algorithm::Exact2 => match mode {
                SelectionMode::NoReplacement => exact2_no_replacement(&sets[0], &sets[1], &DiagramCost)?,
                SelectionMode::WithReplacement => exact2_with_replacement(&sets[0], &sets[1], &DiagramCost)?,
                SelectionMode::Continuous => exact2_continuous(&sets[0], &sets[1], &DiagramCost)?,
            },
            Algorithm::Approx => approx_with(&sets, &DiagramCost, mode, objective)?,
            Algorithm::Brute => brute_force_with(&sets, &DiagramCost, mode, objective)?,
        }
    };

    let diagram: Diagram = solution
        .clusters
        .iter()
        .filter(|c| !c.center.on_diagonal && c.center.pt.y > c.center.pt.x)
        .map(|c| c.center.pt)
        .collect();
    let mut objective_value = 0.0f64;
    for d in diagrams {
        let v = match objective {
            Objective::Bottleneck => bottleneck_distance(&diagram, d)?,
            Objective::Wasserstein(p) => wasserstein_distance(&diagram, d, p)?,
        };
        objective_value = objective_value.max(v);
    }
    Ok(DiagramCenter {
        diagram,
        solution,
        augmented,
        objective_value,
        algorithm,
    })
}
