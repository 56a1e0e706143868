//! Text renderings of results. Every line is derived from sorted data, so
//! output is reproducible byte for byte.

use std::fmt::Write as _;

use crate::classify::{ClassificationRecord, EquivalenceOutcome, Obstruction, RAY_CAP};
use crate::cone::{Cone, Face};
use crate::goodness::GoodnessReport;
use crate::lattice::{FiniteAbelianGroup, LatticeVector};
use crate::reduction::ReductionData;

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

pub fn vector_list(vs: &[LatticeVector]) -> String {
    let parts: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn face_kind(face: &Face) -> String {
    if face.dim() == 1 {
        "edge".into()
    } else if face.codim == 1 {
        "facet".into()
    } else {
        format!("codim-{} face", face.codim)
    }
}

/// `GOOD (6 faces checked)` or `NOT GOOD: 4 edge obstructions Z/2`.
pub fn goodness_summary(report: &GoodnessReport) -> String {
    if report.is_good {
        return format!("GOOD ({} checked)", plural(report.checked_faces, "face"));
    }
    format!("NOT GOOD: {}", obstruction_groups(report))
}

fn obstruction_groups(report: &GoodnessReport) -> String {
    let mut groups: Vec<(String, FiniteAbelianGroup, usize)> = Vec::new();
    for f in &report.failures {
        let kind = face_kind(&f.face);
        match groups
            .iter_mut()
            .find(|(k, g, _)| *k == kind && *g == f.obstruction)
        {
            Some(entry) => entry.2 += 1,
            None => groups.push((kind, f.obstruction.clone(), 1)),
        }
    }
    groups
        .iter()
        .map(|(kind, g, count)| format!("{} {g}", plural(*count, &format!("{kind} obstruction"))))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn goodness_details(report: &GoodnessReport, cone: &Cone) -> Vec<String> {
    report
        .failures
        .iter()
        .map(|f| {
            format!(
                "  face {:?} dim {} codim {}: {} ({}; normals {})",
                f.face.active,
                f.face.dim(),
                f.face.codim,
                f.obstruction,
                f.reason.describe(),
                vector_list(&f.face.active_normals(cone)),
            )
        })
        .collect()
}

pub fn classification_line(record: &ClassificationRecord) -> String {
    match record {
        ClassificationRecord::Free3D {
            winding,
            winding_defaulted,
        } => {
            let note = if *winding_defaulted { " (winding not given, default)" } else { "" };
            format!("Free3D n={winding} M=T^3{note}")
        }
        ClassificationRecord::Lens3D { lens, h2, .. } => {
            format!("Lens3D q={} p={} H2={h2}", lens.q, lens.p)
        }
        ClassificationRecord::FreeBundle {
            base_sphere_dim,
            class_group,
        } => format!("FreeBundle base=S^{base_sphere_dim} classes={class_group}"),
        ClassificationRecord::GoodCone { cone } => {
            format!("GoodCone rank={} rays={}", cone.rank(), vector_list(cone.rays()))
        }
        ClassificationRecord::SplitProduct {
            torus_dim,
            sphere_dim,
            ..
        } => format!("SplitProduct T^{torus_dim} x S^{sphere_dim}"),
        ClassificationRecord::NotRealizable { obstruction } => match obstruction {
            Obstruction::NotFullDimensional { dimension } => {
                format!("NotRealizable: cone is not full-dimensional (dimension {dimension})")
            }
            Obstruction::NotGood { report } => {
                format!("NotRealizable: not good, {}", obstruction_groups(report))
            }
        },
    }
}

pub fn reduction_lines(data: &ReductionData) -> Vec<String> {
    let mut lines = vec![
        format!(
            "N={} n={} sphere=S^{} manifold dim {}",
            data.normal_count,
            data.rank,
            data.sphere_dimension(),
            data.manifold_dimension()
        ),
        format!("W={}", data.matrix),
    ];
    let mut torus = format!(
        "T: dim {}, components {}",
        data.torus.dimension(),
        data.component_group()
    );
    if !data.torus.component_generators.is_empty() {
        let gens: Vec<String> = data.torus.component_generators.iter().map(ToString::to_string).collect();
        let _ = write!(torus, " generated by {}", gens.join(","));
    }
    lines.push(torus);
    let bad: Vec<_> = data
        .face_isotropies
        .iter()
        .filter(|f| !f.group.is_trivial())
        .collect();
    if bad.is_empty() {
        lines.push(format!(
            "free on the level set ({} trivial)",
            plural(data.face_isotropies.len(), "face isotropy group")
        ));
    } else {
        lines.push(format!(
            "NOT free: {} of {} faces have nontrivial isotropy",
            bad.len(),
            data.face_isotropies.len()
        ));
        for f in bad {
            lines.push(format!("  face {:?}: {}", f.face.active, f.group));
        }
    }
    lines
}

pub fn equivalence_line(outcome: &EquivalenceOutcome) -> String {
    match outcome {
        EquivalenceOutcome::Equivalent(a) => format!("EQUIVALENT A={a}"),
        EquivalenceOutcome::NotEquivalent => "NOT EQUIVALENT".into(),
        EquivalenceOutcome::CapExceeded { rays } => {
            format!("UNDECIDED: {rays} rays exceed the search cap of {RAY_CAP}")
        }
    }
}
