use serde::{Deserialize, Serialize};

use crate::budget::{check_budget, saturating_pow};
use crate::cubes::{Category, CubeMorphism};
use crate::structures::{Corner, CubeStructure, StructureError};

use super::{all_maps, pull, AlgebraError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Not evaluated, usually because the budget was exceeded.
    Skipped,
}

/// Evidence for a failed check. Every variant can be re-verified with
/// [`Witness::replay`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Witness {
    /// `cube ∈ C^m` but `cube ∘ morphism ∉ C^n`.
    Presheaf {
        morphism: CubeMorphism,
        cube: Vec<usize>,
    },
    Ergodicity {
        pair: [usize; 2],
    },
    /// A corner without completion.
    Completion {
        n: usize,
        corner: Vec<usize>,
    },
    /// A corner with several completions.
    Step {
        n: usize,
        corner: Vec<usize>,
        completions: Vec<usize>,
    },
    /// `map` and its pullback along the projection to the first `n`
    /// coordinates of `{0,1}^m` disagree on membership.
    DownDet {
        n: usize,
        m: usize,
        map: Vec<usize>,
    },
    /// Membership of `map` disagrees with the face criterion for a
    /// `k`-step structure.
    UpDet {
        k: usize,
        map: Vec<usize>,
    },
}

fn dim_of(len: usize) -> usize {
    len.trailing_zeros() as usize
}

impl Witness {
    /// Whether the witness still demonstrates a failure in `x`.
    pub fn replay(&self, x: &CubeStructure) -> Result<bool, AlgebraError> {
        let check_len = |len: usize| -> Result<usize, AlgebraError> {
            if !len.is_power_of_two() {
                return Err(StructureError::WrongLength { expected: len.next_power_of_two(), found: len }.into());
            }
            Ok(dim_of(len))
        };
        let member = |values: &[usize]| -> Result<bool, AlgebraError> {
            let c = crate::structures::CubeMap::from_values(values.to_vec())?;
            Ok(x.contains(&c)?)
        };
        Ok(match self {
            Witness::Presheaf { morphism, cube } => {
                check_len(cube.len())?;
                let image = crate::structures::CubeMap::from_values(cube.clone())?.pullback(morphism)?;
                member(cube)? && !x.contains(&image)?
            }
            Witness::Ergodicity { pair } => !member(pair)?,
            Witness::Completion { n, corner } => {
                let f = Corner::new(*n, corner.clone())?;
                match x.complete_corner(&f) {
                    Ok(list) => list.is_empty(),
                    Err(StructureError::LowerFaceNotCube { .. }) => false,
                    Err(e) => return Err(e.into()),
                }
            }
            Witness::Step { n, corner, completions } => {
                let f = Corner::new(*n, corner.clone())?;
                let found: Vec<usize> = x.complete_corner(&f)?.iter().map(|c| c.get(f.top())).collect();
                completions.len() >= 2 && completions.iter().all(|t| found.contains(t))
            }
            Witness::DownDet { n, m, map } => {
                if check_len(map.len())? != *n || m < n {
                    return Err(AlgebraError::InvalidParameter("witness dimensions do not match".into()));
                }
                let phi = CubeMorphism::projection(*m, &(1..=*n).collect::<Vec<_>>())?;
                member(map)? != member(&pull(map, &phi.table()))?
            }
            Witness::UpDet { k, map } => {
                let n = check_len(map.len())?;
                member(map)? != up_det_criterion(x, n, *k, map)?
            }
        })
    }
}

fn up_det_criterion(x: &CubeStructure, n: usize, k: usize, map: &[usize]) -> Result<bool, AlgebraError> {
    for i in 1..=n {
        let face = crate::structures::face_values(map, n, i, false);
        if !x.contains_values(n - 1, &face) {
            return Ok(false);
        }
    }
    Ok(x.contains_values(k + 1, &pull(map, &top_embedding(n, k)?.table())))
}

/// `(x_1..x_{k+1}) ↦ (x_1..x_{k+1}, 1, ..., 1)`.
fn top_embedding(n: usize, k: usize) -> Result<CubeMorphism, AlgebraError> {
    use crate::cubes::CoordinateRule;
    let rules = (1..=n).map(|p| if p <= k + 1 { CoordinateRule::Coord(p) } else { CoordinateRule::Const(true) });
    Ok(CubeMorphism::new(k + 1, rules.collect())?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    fn pass() -> Self {
        CheckResult { status: Status::Pass, witness: None, note: None }
    }

    fn fail(w: Witness) -> Self {
        CheckResult { status: Status::Fail, witness: Some(w), note: None }
    }

    fn skipped(note: impl Into<String>) -> Self {
        CheckResult { status: Status::Skipped, witness: None, note: Some(note.into()) }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Completion results at one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletionCheck {
    pub n: usize,
    pub status: Status,
    pub corners: usize,
    pub min_completions: usize,
    pub max_completions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepVerdict {
    /// Smallest `k` with unique completions at every `n` in `k+1..=dim_cap`.
    Exactly(usize),
    /// Completions are not unique at `dim_cap`.
    AboveCap,
    /// Nothing could be decided.
    Unknown,
}

/// Outcome of [`check_axioms`]. Verdicts only cover dimensions up to
/// `dim_cap`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub dim_cap: usize,
    /// `|C^n(X)|` for each enumerated dimension.
    pub cube_counts: Vec<usize>,
    pub presheaf: CheckResult,
    pub ergodicity: CheckResult,
    pub completion: Vec<CompletionCheck>,
    pub step: StepVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_witness: Option<Witness>,
    /// Largest `k <= dim_cap` with `C^k(X)` full.
    pub k_ergodic: Option<usize>,
    pub down_det: CheckResult,
    pub up_det: CheckResult,
}

impl AxiomReport {
    pub fn is_groupspace(&self) -> bool {
        self.presheaf.passed() && self.ergodicity.passed() && self.completion.iter().all(|c| c.status == Status::Pass)
    }

    /// Every failure witness in the report.
    pub fn witnesses(&self) -> Vec<&Witness> {
        let mut out: Vec<&Witness> = Vec::new();
        out.extend(self.presheaf.witness.iter());
        out.extend(self.ergodicity.witness.iter());
        out.extend(self.completion.iter().filter_map(|c| c.witness.as_ref()));
        out.extend(self.down_det.witness.iter());
        out.extend(self.up_det.witness.iter());
        out
    }

    pub fn has_skips(&self) -> bool {
        self.presheaf.status == Status::Skipped
            || self.ergodicity.status == Status::Skipped
            || self.completion.iter().any(|c| c.status == Status::Skipped)
            || self.down_det.status == Status::Skipped
            || self.up_det.status == Status::Skipped
    }
}

/// Checks the groupspace axioms on dimensions `0..=dim_cap`. Sub-checks
/// that exceed the budget are reported as skipped.
pub fn check_axioms(x: &CubeStructure, dim_cap: usize, budget: u64) -> Result<AxiomReport, AlgebraError> {
    if dim_cap > x.dim_cap() {
        return Err(StructureError::DimensionAboveCap { dim: dim_cap, cap: x.dim_cap() }.into());
    }
    let size = x.size();
    let mut cubes: Vec<Vec<Vec<usize>>> = Vec::with_capacity(dim_cap + 1);
    let mut enumeration_note = None;
    for n in 0..=dim_cap {
        match x.enumerate_values(n, budget) {
            Ok(c) => cubes.push(c),
            Err(StructureError::Budget(b)) => {
                enumeration_note = Some(format!("C^{n} not enumerated: {b}"));
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    // Highest dimension whose cubes are available.
    let top = cubes.len().checked_sub(1);

    let ergodicity = if dim_cap == 0 {
        CheckResult::skipped("dim_cap 0 has no 1-cubes")
    } else {
        match (0..size * size).map(|p| [p / size, p % size]).find(|pair| !x.contains_values(1, pair)) {
            Some(pair) => CheckResult::fail(Witness::Ergodicity { pair }),
            None => CheckResult::pass(),
        }
    };

    let presheaf = match top {
        None => CheckResult::skipped(enumeration_note.clone().unwrap_or_default()),
        Some(top) => {
            let mut result = check_presheaf(x, &cubes, top, budget);
            if result.passed() && top < dim_cap {
                result = CheckResult::skipped(enumeration_note.clone().unwrap_or_default());
            }
            result
        }
    };

    let mut completion = Vec::new();
    let mut unique = Vec::new();
    for n in 1..=dim_cap {
        let check = check_completion(x, n, budget);
        unique.push(check.status == Status::Pass && check.max_completions <= 1);
        completion.push(check);
    }

    let mut step = StepVerdict::Unknown;
    let mut step_witness = None;
    if !completion.is_empty() && completion.iter().all(|c| c.status != Status::Skipped) {
        step = if unique[dim_cap - 1] {
            let mut k = dim_cap - 1;
            while k > 0 && unique[k - 1] {
                k -= 1;
            }
            StepVerdict::Exactly(k)
        } else {
            StepVerdict::AboveCap
        };
        // The corner that rules out the next smaller step.
        let n = match step {
            StepVerdict::Exactly(k) => k,
            _ => dim_cap,
        };
        if n >= 1 {
            step_witness = non_unique_corner(x, n, budget);
        }
    }

    let k_ergodic =
        top.and_then(|top| (0..=top).take_while(|&k| saturating_pow(size, 1 << k) == cubes[k].len() as u128).last());

    let down_det = match top {
        Some(top) => check_down_det(x, top, budget),
        None => CheckResult::skipped(enumeration_note.clone().unwrap_or_default()),
    };
    let up_det = match step {
        StepVerdict::Exactly(k) if k + 2 <= dim_cap => check_up_det(x, k, dim_cap, budget),
        StepVerdict::Exactly(_) => CheckResult::skipped("no dimension above k+1 within dim_cap"),
        _ => CheckResult::skipped("step not determined"),
    };

    Ok(AxiomReport {
        dim_cap,
        cube_counts: cubes.iter().map(|c| c.len()).collect(),
        presheaf,
        ergodicity,
        completion,
        step,
        step_witness,
        k_ergodic,
        down_det,
        up_det,
    })
}

fn check_presheaf(x: &CubeStructure, cubes: &[Vec<Vec<usize>>], top: usize, budget: u64) -> CheckResult {
    let mut plan = Vec::new();
    let mut cost: u128 = 0;
    for m in 0..=top {
        for n in 0..=top {
            let morphisms = CubeMorphism::all(n, m, Category::G);
            cost = cost.saturating_add(((morphisms.len() as u128) * (cubes[m].len() as u128)) << n);
            plan.push((m, morphisms));
        }
    }
    if let Err(e) = check_budget(cost, budget) {
        return CheckResult::skipped(e.to_string());
    }
    for (m, morphisms) in plan {
        for phi in morphisms {
            let table = phi.table();
            let n = phi.source_dim();
            if let Some(c) = cubes[m].iter().find(|c| !x.contains_values(n, &pull(c, &table))) {
                return CheckResult::fail(Witness::Presheaf { morphism: phi, cube: c.clone() });
            }
        }
    }
    CheckResult::pass()
}

fn check_completion(x: &CubeStructure, n: usize, budget: u64) -> CompletionCheck {
    let mut check = CompletionCheck {
        n,
        status: Status::Pass,
        corners: 0,
        min_completions: usize::MAX,
        max_completions: 0,
        witness: None,
        note: None,
    };
    let corners = match x.corners(n, budget) {
        Ok(c) => c,
        Err(e) => {
            check.status = Status::Skipped;
            check.note = Some(e.to_string());
            check.min_completions = 0;
            return check;
        }
    };
    if let Err(e) = check_budget(((corners.len() as u128) * (x.size() as u128)) << n, budget) {
        check.status = Status::Skipped;
        check.note = Some(e.to_string());
        check.min_completions = 0;
        return check;
    }
    check.corners = corners.len();
    for f in &corners {
        let count = x.completions_unchecked(f).len();
        check.min_completions = check.min_completions.min(count);
        check.max_completions = check.max_completions.max(count);
        if count == 0 && check.witness.is_none() {
            check.status = Status::Fail;
            check.witness = Some(Witness::Completion { n, corner: f.values().to_vec() });
        }
    }
    if corners.is_empty() {
        check.min_completions = 0;
    }
    check
}

fn non_unique_corner(x: &CubeStructure, n: usize, budget: u64) -> Option<Witness> {
    x.corners(n, budget).ok()?.into_iter().find_map(|f| {
        let found = x.completions_unchecked(&f);
        (found.len() >= 2).then(|| Witness::Step {
            n,
            corner: f.values().to_vec(),
            completions: found.iter().map(|c| c.get(f.top())).collect(),
        })
    })
}

/// Membership of every map of dimension `n` against its pullback to each
/// `m` in `n+1..=top`.
fn check_down_det(x: &CubeStructure, top: usize, budget: u64) -> CheckResult {
    let size = x.size();
    let mut cost: u128 = 0;
    for n in 0..top {
        cost = cost.saturating_add(saturating_pow(size, 1 << n).saturating_mul(((top - n) as u128) << top));
    }
    if let Err(e) = check_budget(cost, budget) {
        return CheckResult::skipped(e.to_string());
    }
    for n in 0..top {
        let subset: Vec<usize> = (1..=n).collect();
        for m in n + 1..=top {
            let table = CubeMorphism::projection(m, &subset).expect("valid projection").table();
            for map in all_maps(size, n) {
                if x.contains_values(n, &map) != x.contains_values(m, &pull(&map, &table)) {
                    return CheckResult::fail(Witness::DownDet { n, m, map });
                }
            }
        }
    }
    CheckResult::pass()
}

/// For a `k`-step verdict: every map whose lower faces are cubes is a cube
/// exactly when its restriction to the top `(k+1)`-face through `1^n` is.
fn check_up_det(x: &CubeStructure, k: usize, dim_cap: usize, budget: u64) -> CheckResult {
    for n in k + 2..=dim_cap {
        let corners = match x.corners(n, budget) {
            Ok(c) => c,
            Err(e) => return CheckResult::skipped(e.to_string()),
        };
        if let Err(e) = check_budget(((corners.len() as u128) * (x.size() as u128)) << n, budget) {
            return CheckResult::skipped(e.to_string());
        }
        let table = top_embedding(n, k).expect("k + 1 <= n").table();
        for f in &corners {
            for t in 0..x.size() {
                let map = f.with_top(t).into_values();
                if x.contains_values(n, &map) != x.contains_values(k + 1, &pull(&map, &table)) {
                    return CheckResult::fail(Witness::UpDet { k, map });
                }
            }
        }
    }
    CheckResult::pass()
}
