//! Splitting through a chain `H_0 ⊂ H_1 ⊂ ⋯ ⊂ G`: if every step splits,
//! so does the composite.

use serde::{Deserialize, Serialize};

use super::{volume, HomError, HomSpaceSpec, RootData, Verdict, VolumeResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ChainSpec {
    /// `P(p_1)×⋯×P(p_k) ⊂ P(p_1 + ⋯ + p_k)`, peeling one factor at a time.
    Periplectic { parts: Vec<usize> },
    /// `D ⊂ K ⊂ G` for the defect subgroup of a flag.
    Flag { root_data: RootData },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// The two groups coincide.
    Identity,
    Volume { space: String, result: VolumeResult },
    /// `Rep(K/D)` is semisimple: the roots of `𝔨` other than `±α_i` have
    /// no isotropic member.
    SemisimpleQuotient { isotropic_roots_in_c: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainStep {
    pub sub: String,
    pub sup: String,
    pub evidence: Evidence,
    pub splitting: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub chain: String,
    pub steps: Vec<ChainStep>,
    pub broken_at: Option<usize>,
    pub conclusion: Verdict,
    pub statement: String,
}

fn product(parts: &[usize]) -> String {
    if parts.len() > 1 && parts.iter().all(|&p| p == parts[0]) {
        return format!("P({})^{}", parts[0], parts.len());
    }
    parts.iter().map(|p| format!("P({p})")).collect::<Vec<_>>().join("x")
}

fn separate(parts: &[usize]) -> String {
    parts.iter().map(|p| format!("P({p})")).collect::<Vec<_>>().join("x")
}

fn volume_step(sub: String, sup: String, spec: HomSpaceSpec) -> Result<ChainStep, HomError> {
    let result = volume(&spec)?;
    Ok(ChainStep {
        sub,
        sup,
        splitting: result.nonzero,
        evidence: Evidence::Volume { space: spec.describe(), result },
    })
}

fn periplectic_steps(parts: &[usize]) -> Result<Vec<ChainStep>, HomError> {
    if parts.len() < 2 || parts.contains(&0) {
        return Err(HomError::InvalidParameter("a periplectic chain needs at least two positive parts".into()));
    }
    let mut steps = Vec::new();
    if product(parts) != separate(parts) {
        steps.push(ChainStep {
            sub: product(parts),
            sup: separate(parts),
            evidence: Evidence::Identity,
            splitting: true,
        });
    }
    // Innermost first: P(p_{k-1})×P(p_k) ⊂ P(p_{k-1}+p_k), and so on outwards.
    for j in (0..parts.len() - 1).rev() {
        let head = &parts[..j];
        let rest: usize = parts[j + 1..].iter().sum();
        let prefix: Vec<String> = head.iter().map(|p| format!("P({p})")).collect();
        let with = |tail: String| -> String { prefix.iter().cloned().chain([tail]).collect::<Vec<_>>().join("x") };
        steps.push(volume_step(
            with(format!("P({})xP({rest})", parts[j])),
            with(format!("P({})", parts[j] + rest)),
            HomSpaceSpec::Periplectic { r: parts[j], s: rest },
        )?);
    }
    Ok(steps)
}

fn flag_steps(data: &RootData) -> Result<Vec<ChainStep>, HomError> {
    data.validate()?;
    let d = data.isotropic_roots.len();
    let alphas: Vec<Vec<i64>> = data
        .isotropic_roots
        .iter()
        .flat_map(|a| [a.clone(), a.iter().map(|x| -x).collect()])
        .collect();
    let isotropic_in_c = data
        .orthogonal_roots()
        .iter()
        .filter(|b| !alphas.contains(b) && data.form(b, b) == 0 && data.odd_roots.contains(b))
        .count();
    let mut steps = vec![ChainStep {
        sub: format!("D = SL(1|1)^{d}"),
        sup: "K".into(),
        evidence: Evidence::SemisimpleQuotient { isotropic_roots_in_c: isotropic_in_c },
        splitting: isotropic_in_c == 0,
    }];
    steps.push(volume_step("K".into(), "G".into(), HomSpaceSpec::Flag { root_data: data.clone() })?);
    Ok(steps)
}

pub fn splitting_chain_report(spec: &ChainSpec) -> Result<ChainReport, HomError> {
    let (steps, bottom, top) = match spec {
        ChainSpec::Periplectic { parts } => {
            let steps = periplectic_steps(parts)?;
            (steps, product(parts), format!("P({})", parts.iter().sum::<usize>()))
        }
        ChainSpec::Flag { root_data } => (flag_steps(root_data)?, "D".to_string(), "G".to_string()),
    };
    let broken_at = steps.iter().position(|s| !s.splitting);
    let mut links: Vec<&str> = steps.iter().map(|s| s.sub.as_str()).collect();
    links.push(steps.last().map_or(top.as_str(), |s| s.sup.as_str()));
    let conclusion = if broken_at.is_none() { Verdict::Splitting } else { Verdict::Inconclusive };
    let statement = match broken_at {
        None => format!("{bottom} is splitting in {top}"),
        Some(i) => format!("chain broken at step {i}: {} in {} is not established", steps[i].sub, steps[i].sup),
    };
    Ok(ChainReport { chain: links.join(" < "), steps, broken_at, conclusion, statement })
}
