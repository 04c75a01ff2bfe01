//! Search engines and their certificates.
//!
//! * [`find_positive_coboundary`]: a nonzero `x ≥ 0` in `H_σ`, refuting
//!   `H_σ ∩ K₀⁺ = {0}`.
//! * [`find_invariant_state`]: `β: Z^{p_m} → Z` with `β(1) > 0`, `β(g) > 0`
//!   on `S`, and `β(α̂_w g) = β(g)` for `g ∈ S`, `w ∈ F`.
//! * [`check_k0_rfd_stationary`]: a globally invariant `μ ≥ 0` on a
//!   stationary system.
//!
//! Every returned object re-verifies by exact arithmetic before it leaves
//! this module.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::dimgroup::{InductiveSystem, LimitElement, Tristate};
use crate::json;
use crate::kaction::{equal_in_limit, K0Action, Letter, SigmaGenerator, Word};
use crate::linalg::lattice::{
    common_denominator, l1_reduce, primitive_integer_vector, solve_in_lattice, solve_rational, to_rational,
};
use crate::linalg::lp::{lp_feasible, Constraint, FarkasCertificate, Feasibility, LinearProgram};
use crate::linalg::matrix::{dot, vec_height, vec_is_nonnegative, vec_is_zero, vec_scale, IntMatrix, IntVector};
use crate::{Error, Result};

/// Parameter box of a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub max_stage: usize,
    pub word_length: usize,
    pub height_bound: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            max_stage: 4,
            word_length: 1,
            height_bound: 16,
        }
    }
}

impl SearchParams {
    pub fn to_json(&self) -> Value {
        json::object([
            ("max_stage", Value::from(self.max_stage)),
            ("word_length", Value::from(self.word_length)),
            ("height_bound", Value::from(self.height_bound)),
        ])
    }
}

/// Grid point: generators from stage `source_stage`, pushed to
/// `target_stage`, words of length at most `word_length`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub source_stage: usize,
    pub target_stage: usize,
    pub word_length: usize,
}

impl Cell {
    fn to_json(self) -> Value {
        json::object([
            ("source_stage", Value::from(self.source_stage)),
            ("target_stage", Value::from(self.target_stage)),
            ("word_length", Value::from(self.word_length)),
        ])
    }
}

/// Outcome of the lattice–cone question for one stage lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeDecision {
    ZeroLattice,
    /// The rational span meets `Z^p_{≥0}` only in `0`; the certificate
    /// refutes `B·λ ≥ 0, Σ(B·λ) ≥ 1` for the basis `B`.
    Separated(FarkasCertificate),
    /// Least-height lattice point on an extreme ray of `span ∩ cone`.
    Point(IntVector),
}

fn basis_program(basis: &IntMatrix) -> LinearProgram {
    let p = basis.rows();
    let mut lp = LinearProgram::new(basis.cols());
    for i in 0..p {
        lp = lp.at_least(Constraint::from_ints(basis.row(i), 0));
    }
    let total: IntVector = (0..basis.cols()).map(|j| basis.column(j).iter().sum()).collect();
    lp.at_least(Constraint::from_ints(&total, 1))
}

/// Decides whether the subgroup spanned by the columns of `basis` (assumed
/// linearly independent) contains a nonzero nonnegative vector.
///
/// A nonzero nonnegative rational vector of the span has a positive integer
/// multiple in the lattice, so the question is a rational LP over the
/// coefficients. When feasible, for each coordinate `i` a canonical extreme
/// ray with `v_i > 0` is found by greedily forcing later coordinates to zero;
/// the least-height minimal lattice multiple wins, ties going to smaller `i`.
pub fn lattice_cone_point(basis: &IntMatrix) -> ConeDecision {
    if basis.cols() == 0 {
        return ConeDecision::ZeroLattice;
    }
    let base = basis_program(basis);
    if let Feasibility::Infeasible(cert) = lp_feasible(&base).expect("well-formed program") {
        return ConeDecision::Separated(cert);
    }
    let p = basis.rows();
    let rows_q: Vec<Vec<BigRational>> = (0..p).map(|i| to_rational(basis.row(i))).collect();
    let mut best: Option<(BigInt, IntVector)> = None;
    for i in 0..p {
        let mut lp = base.clone().at_least(Constraint::from_ints(basis.row(i), 1));
        let Feasibility::Feasible(mut point) = lp_feasible(&lp).expect("well-formed program") else {
            continue;
        };
        for j in (0..p).rev().filter(|&j| j != i) {
            let trial = lp.clone().equal(Constraint::from_ints(basis.row(j), 0));
            if let Feasibility::Feasible(x) = lp_feasible(&trial).expect("well-formed program") {
                lp = trial;
                point = x;
            }
        }
        let v: Vec<BigRational> = rows_q
            .iter()
            .map(|r| r.iter().zip(&point).map(|(a, b)| a * b).sum())
            .collect();
        let prim = primitive_integer_vector(&v);
        let lambda = solve_rational(&rows_q, &to_rational(&prim), basis.cols()).expect("ray lies in the span");
        let w = vec_scale(&prim, &common_denominator(&lambda));
        let h = vec_height(&w);
        if best.as_ref().is_none_or(|(bh, _)| &h < bh) {
            best = Some((h, w));
        }
    }
    ConeDecision::Point(best.expect("feasible program has a coordinate with v_i > 0").1)
}

/// Why the witness value is nonzero in the limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonzeroProof {
    /// Every connecting map from the stage on is injective.
    Injective,
    /// No connecting map from the stage on has a zero column, so a nonzero
    /// nonnegative vector stays nonzero.
    ColumnFaithful,
    /// Only observed to stay nonzero up to this stage.
    Horizon(usize),
}

impl NonzeroProof {
    pub fn is_proof(self) -> bool {
        !matches!(self, NonzeroProof::Horizon(_))
    }

    fn to_json(self) -> Value {
        match self {
            NonzeroProof::Injective => Value::from("injective"),
            NonzeroProof::ColumnFaithful => Value::from("column_faithful"),
            NonzeroProof::Horizon(h) => json::object([("horizon", Value::from(h))]),
        }
    }
}

/// `x = σ(g₁,…,g_r)`, nonnegative and nonzero at `positive_at_stage`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub preimages: Vec<LimitElement>,
    pub value: LimitElement,
    pub positive_at_stage: usize,
    pub height: BigInt,
    pub nonzero: NonzeroProof,
    pub cell: Cell,
}

impl Witness {
    /// Exact re-check of `σ(g) = x`, `x ≥ 0`, `x ≠ 0`, and the nonzero proof.
    pub fn verify(&self, system: &InductiveSystem, action: &K0Action) -> bool {
        let Ok(sigma) = action.coboundary(system, &self.preimages) else {
            return false;
        };
        self.value.stage == self.positive_at_stage
            && equal_in_limit(system, &sigma, &self.value, self.value.stage)
            && vec_is_nonnegative(&self.value.vector)
            && !vec_is_zero(&self.value.vector)
            && self.height == vec_height(&self.value.vector)
            && match self.nonzero {
                NonzeroProof::Injective => system.injective_from(self.value.stage),
                NonzeroProof::ColumnFaithful => system.column_faithful_from(self.value.stage),
                NonzeroProof::Horizon(h) => {
                    (self.value.stage..=h).all(|s| system.push(&self.value, s).is_ok_and(|v| !v.is_stage_zero()))
                }
            }
    }

    pub fn to_json(&self) -> Value {
        json::object([
            (
                "preimages",
                Value::Array(self.preimages.iter().map(json::element).collect()),
            ),
            ("value", json::element(&self.value)),
            ("positive_at_stage", Value::from(self.positive_at_stage)),
            ("height", json::bigint(&self.height)),
            ("nonzero", self.nonzero.to_json()),
            ("cell", self.cell.to_json()),
        ])
    }
}

fn nonzero_proof(system: &InductiveSystem, x: &LimitElement, horizon: usize) -> NonzeroProof {
    if system.injective_from(x.stage) {
        NonzeroProof::Injective
    } else if system.column_faithful_from(x.stage) {
        NonzeroProof::ColumnFaithful
    } else {
        let h = system.effective_horizon(horizon.max(x.stage));
        let alive = (x.stage..=h).all(|s| system.push(x, s).is_ok_and(|v| !v.is_stage_zero()));
        NonzeroProof::Horizon(if alive { h } else { x.stage })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellOutcome {
    OutOfRange(String),
    ZeroLattice,
    Separated(FarkasCertificate),
    /// A cone point exists but its least height exceeds the bound.
    HeightExceeded(BigInt),
    Found,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellReport {
    pub cell: Cell,
    pub outcome: CellOutcome,
}

impl CellReport {
    fn to_json(&self) -> Value {
        let mut v = self.cell.to_json();
        let m = v.as_object_mut().unwrap();
        let (tag, extra) = match &self.outcome {
            CellOutcome::OutOfRange(r) => ("out_of_range", Some(("reason", Value::from(r.as_str())))),
            CellOutcome::ZeroLattice => ("zero_lattice", None),
            CellOutcome::Separated(c) => ("separated", Some(("farkas", farkas_json(c)))),
            CellOutcome::HeightExceeded(h) => ("height_exceeded", Some(("height", json::bigint(h)))),
            CellOutcome::Found => ("found", None),
        };
        m.insert("outcome".into(), Value::from(tag));
        if let Some((k, x)) = extra {
            m.insert(k.into(), x);
        }
        v
    }
}

fn farkas_json(c: &FarkasCertificate) -> Value {
    json::object([
        (
            "equality_multipliers",
            Value::Array(c.equality_multipliers.iter().map(json::rational).collect()),
        ),
        (
            "inequality_multipliers",
            Value::Array(c.inequality_multipliers.iter().map(json::rational).collect()),
        ),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub params: SearchParams,
    pub cells: Vec<CellReport>,
    pub witness: Option<Witness>,
}

impl SearchReport {
    /// True when the box held a witness whose nonzero-ness is proved.
    pub fn is_violation(&self) -> bool {
        self.witness.as_ref().is_some_and(|w| w.nonzero.is_proof())
    }

    pub fn to_json(&self) -> Value {
        json::object([
            ("params", self.params.to_json()),
            (
                "cells",
                Value::Array(self.cells.iter().map(CellReport::to_json).collect()),
            ),
        ])
    }
}

/// Scans the grid `m ≤ max_stage`, `k ≤ m`, `L ≤ word_length` in that
/// lexicographic order and stops at the first cell holding a witness.
pub fn find_positive_coboundary(
    system: &InductiveSystem,
    action: &K0Action,
    params: SearchParams,
) -> Result<SearchReport> {
    let mut cells = Vec::new();
    for m in 0..=params.max_stage {
        if let Err(e) = system.check_stage(m) {
            let cell = Cell {
                source_stage: 0,
                target_stage: m,
                word_length: 1,
            };
            cells.push(CellReport {
                cell,
                outcome: CellOutcome::OutOfRange(e.to_string()),
            });
            break;
        }
        for k in 0..=m {
            for l in 1..=params.word_length.max(1) {
                let cell = Cell {
                    source_stage: k,
                    target_stage: m,
                    word_length: l,
                };
                let (outcome, witness) = decide_cell(system, action, cell, params)?;
                cells.push(CellReport { cell, outcome });
                if witness.is_some() {
                    return Ok(SearchReport { params, cells, witness });
                }
            }
        }
    }
    Ok(SearchReport {
        params,
        cells,
        witness: None,
    })
}

fn decide_cell(
    system: &InductiveSystem,
    action: &K0Action,
    cell: Cell,
    params: SearchParams,
) -> Result<(CellOutcome, Option<Witness>)> {
    if action.generators() == 0 {
        return Ok((CellOutcome::ZeroLattice, None));
    }
    let gens = match action.sigma_generators(system, cell.source_stage, cell.target_stage, cell.word_length) {
        Ok(g) => g,
        Err(e @ (Error::HorizonExhausted { .. } | Error::StageOutOfRange { .. } | Error::Precondition(_))) => {
            return Ok((CellOutcome::OutOfRange(e.to_string()), None))
        }
        Err(e) => return Err(e),
    };
    let p = system.rank(cell.target_stage)?;
    let values: Vec<IntVector> = gens.iter().map(|g| g.value.clone()).collect();
    let basis_rows = crate::linalg::lattice::reduced_row_basis(&values, p);
    let basis = IntMatrix::from_columns(&basis_rows, p);
    let x = match lattice_cone_point(&basis) {
        ConeDecision::ZeroLattice => return Ok((CellOutcome::ZeroLattice, None)),
        ConeDecision::Separated(c) => return Ok((CellOutcome::Separated(c), None)),
        ConeDecision::Point(x) => x,
    };
    let height = vec_height(&x);
    if height > BigInt::from(params.height_bound) {
        return Ok((CellOutcome::HeightExceeded(height), None));
    }
    let preimages = recover_preimages(system, action, &gens, &x, p)?;
    let value = LimitElement::new(cell.target_stage, x);
    let witness = Witness {
        nonzero: nonzero_proof(system, &value, params.max_stage),
        preimages,
        positive_at_stage: cell.target_stage,
        height,
        value,
        cell,
    };
    assert!(witness.verify(system, action), "witness failed exact re-verification");
    Ok((CellOutcome::Found, Some(witness)))
}

fn recover_preimages(
    system: &InductiveSystem,
    action: &K0Action,
    gens: &[SigmaGenerator],
    x: &[BigInt],
    p: usize,
) -> Result<Vec<LimitElement>> {
    let values: Vec<IntVector> = gens.iter().map(|g| g.value.clone()).collect();
    let g = IntMatrix::from_columns(&values, p);
    let sol = solve_in_lattice(&g, x).expect("lattice point is an integer combination of the generators");
    let coeffs = l1_reduce(&sol.particular, &sol.kernel_basis);
    (0..action.generators())
        .map(|j| {
            let terms: Vec<(BigInt, &LimitElement)> = coeffs
                .iter()
                .zip(gens)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, gen)| (c.clone(), &gen.preimage[j]))
                .collect();
            if terms.is_empty() {
                return Ok(LimitElement::zero(0, system.rank(0)?));
            }
            let e = system.combine(&terms, None)?;
            Ok(e)
        })
        .collect()
}

/// The one-generator specialization: a witness is `g` with `α̂(g) < g`.
pub fn compression_check_r1(system: &InductiveSystem, action: &K0Action, params: SearchParams) -> Result<SearchReport> {
    if action.generators() != 1 {
        return Err(Error::Precondition(format!(
            "the compression check needs exactly one generator, found {}",
            action.generators()
        )));
    }
    find_positive_coboundary(system, action, params)
}

/// Integer functional on a stage group realizing local invariant state data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCertificate {
    pub stage: usize,
    pub functional: IntVector,
    pub set: Vec<LimitElement>,
    pub words: Vec<Word>,
    pub unit_value: BigInt,
    /// `β̃(push g)` for each `g ∈ S`; zero only for elements that vanish in
    /// the limit.
    pub set_values: Vec<BigInt>,
}

impl StateCertificate {
    pub fn verify(&self, system: &InductiveSystem, action: &K0Action) -> bool {
        let m = self.stage;
        let Ok(unit) = system.unit(m) else { return false };
        if self.functional.len() != unit.len()
            || dot(&self.functional, &unit) != self.unit_value
            || !self.unit_value.is_positive()
        {
            return false;
        }
        if self.set_values.len() != self.set.len() {
            return false;
        }
        for (g, val) in self.set.iter().zip(&self.set_values) {
            let Ok(pg) = system.push(g, m) else { return false };
            if &dot(&self.functional, &pg.vector) != val {
                return false;
            }
            if !val.is_positive() && !system.is_zero(g, m).is_ok_and(Tristate::is_yes) {
                return false;
            }
            for w in &self.words {
                let Ok(img) = action.apply(system, w, g) else {
                    return false;
                };
                let Ok(pi) = system.push(&img, m) else { return false };
                if dot(&self.functional, &pi.vector) != *val {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_all_ones(&self) -> bool {
        self.functional.iter().all(One::is_one)
    }

    pub fn to_json(&self) -> Value {
        json::object([
            ("stage", Value::from(self.stage)),
            ("functional", json::int_vector(&self.functional)),
            ("S", Value::Array(self.set.iter().map(json::element).collect())),
            ("F", words_json(&self.words)),
            ("unit_value", json::bigint(&self.unit_value)),
            ("set_values", json::int_vector(&self.set_values)),
        ])
    }
}

fn words_json(words: &[Word]) -> Value {
    Value::Array(
        words
            .iter()
            .map(|w| Value::Array(w.to_signed().into_iter().map(Value::from).collect()))
            .collect(),
    )
}

/// Finite data `(S, F)` for a state search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateRequest {
    pub set: Vec<LimitElement>,
    pub words: Vec<Word>,
}

impl StateRequest {
    /// Stage-0 basis vectors and every generator.
    pub fn default_for(system: &InductiveSystem, action: &K0Action) -> Self {
        let p = system.rank(0).expect("stage 0 exists");
        StateRequest {
            set: (0..p).map(|i| LimitElement::basis(0, p, i)).collect(),
            words: (0..action.generators())
                .map(|j| Word::letter(Letter::forward(j)))
                .collect(),
        }
    }

    /// `S = {x} ∪ {g_j⁺, g_j⁻}`, `F = {s₁,…,s_r}`: data for which no state
    /// can exist once `x = σ(g)` is nonzero and positive.
    pub fn excluded_by(witness: &Witness, generators: usize) -> Self {
        let mut set = vec![witness.value.clone()];
        for g in &witness.preimages {
            let (pos, neg) = g.positive_parts();
            set.extend([pos, neg].into_iter().filter(|e| !e.is_stage_zero()));
        }
        StateRequest {
            set,
            words: (0..generators).map(|j| Word::letter(Letter::forward(j))).collect(),
        }
    }
}

/// Searches stages `m ≤ max_stage` for an integer functional on `Z^{p_m}`
/// with `β(u_m) ≥ 1`, `β(g) ≥ 1` for `g ∈ S` not known to vanish, and
/// `β(g − α̂_w g) = 0`. The all-ones functional is tried first at each stage.
pub fn find_invariant_state(
    system: &InductiveSystem,
    action: &K0Action,
    request: &StateRequest,
    max_stage: usize,
) -> Result<Option<StateCertificate>> {
    if request.set.is_empty() {
        return Err(Error::Precondition("the set S must be nonempty".into()));
    }
    for w in &request.words {
        if let Some(j) = w.max_generator().filter(|&j| j >= action.generators()) {
            return Err(Error::Precondition(format!(
                "word {w} uses generator s{} but the action has {}",
                j + 1,
                action.generators()
            )));
        }
    }
    for (i, g) in request.set.iter().enumerate() {
        system.check_element(g)?;
        if !system.is_positive(g, max_stage.max(g.stage))?.is_yes() {
            return Err(Error::Precondition(format!(
                "element {i} of S is not known to be positive"
            )));
        }
    }
    'stages: for m in 0..=max_stage {
        if system.check_stage(m).is_err() {
            break;
        }
        if request.set.iter().any(|g| g.stage > m) {
            continue;
        }
        let mut pushes = Vec::new();
        let mut diffs = Vec::new();
        for g in &request.set {
            let pg = system.push(g, m)?.vector;
            for w in &request.words {
                let Ok(img) = action.apply(system, w, g) else {
                    continue 'stages;
                };
                let Ok(pi) = system.push(&img, m) else { continue 'stages };
                diffs.push(crate::linalg::matrix::vec_sub(&pg, &pi.vector));
            }
            pushes.push(pg);
        }
        let unit = system.unit(m)?;
        let faithful: Vec<bool> = request
            .set
            .iter()
            .map(|g| system.is_zero(g, m).map(|t| !t.is_yes()))
            .collect::<Result<_>>()?;
        let p = unit.len();
        let fits = |beta: &[BigInt]| {
            dot(beta, &unit).is_positive()
                && diffs.iter().all(|d| dot(beta, d).is_zero())
                && pushes
                    .iter()
                    .zip(&faithful)
                    .all(|(pg, &f)| !f || dot(beta, pg).is_positive())
        };
        let ones = vec![BigInt::one(); p];
        let beta = if fits(&ones) {
            ones
        } else {
            let mut lp = LinearProgram::new(p);
            for d in &diffs {
                lp = lp.equal(Constraint::from_ints(d, 0));
            }
            lp = lp.at_least(Constraint::from_ints(&unit, 1));
            for (pg, &f) in pushes.iter().zip(&faithful) {
                if f {
                    lp = lp.at_least(Constraint::from_ints(pg, 1));
                }
            }
            match lp_feasible(&lp).expect("well-formed program") {
                Feasibility::Feasible(x) => primitive_integer_vector(&x),
                Feasibility::Infeasible(_) => continue,
            }
        };
        debug_assert!(fits(&beta));
        let cert = StateCertificate {
            stage: m,
            unit_value: dot(&beta, &unit),
            set_values: pushes.iter().map(|pg| dot(&beta, pg)).collect(),
            functional: beta,
            set: request.set.clone(),
            words: request.words.clone(),
        };
        assert!(
            cert.verify(system, action),
            "state certificate failed exact re-verification"
        );
        return Ok(Some(cert));
    }
    Ok(None)
}

/// Row vector `c ≥ 0` on the stationary tail with `c·A = c`, `c·T = c` for
/// every stationary action matrix, `c·u ≥ 1` and `c·g ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalState {
    pub stage: usize,
    pub functional: IntVector,
    pub unit_value: BigInt,
    pub element_value: BigInt,
}

pub fn check_k0_rfd_stationary(
    system: &InductiveSystem,
    action: &K0Action,
    g: &LimitElement,
) -> Result<Option<GlobalState>> {
    let (Some(tail), Some(t0)) = (system.tail_matrix(), system.tail_start()) else {
        return Err(Error::NotStationary(
            "the system has a finite prefix only; use find_invariant_state for local invariant states".into(),
        ));
    };
    system.check_element(g)?;
    let p = tail.rows();
    let mut invariant: Vec<&IntMatrix> = vec![tail];
    for maps in action.forward_maps().iter().chain(action.inverse_maps()) {
        let last = maps.last().expect("nonempty by construction");
        if !last.matrix.is_square() || last.matrix.rows() != p {
            return Err(Error::NotStationary(format!(
                "stationary action matrices must be {p}x{p}, found {}x{}",
                last.matrix.rows(),
                last.matrix.cols()
            )));
        }
        invariant.push(&last.matrix);
    }
    let stage = t0.max(g.stage);
    let unit = system.unit(stage)?;
    let gv = system.push(g, stage)?.vector;
    let fits = |c: &[BigInt]| {
        invariant.iter().all(|m| m.left_mul_vec(c).unwrap() == c)
            && c.iter().all(|x| !x.is_negative())
            && dot(c, &unit).is_positive()
            && dot(c, &gv).is_positive()
    };
    let ones = vec![BigInt::one(); p];
    let c = if fits(&ones) {
        ones
    } else {
        let mut lp = LinearProgram::new(p);
        for m in &invariant {
            for j in 0..p {
                let mut col = m.column(j);
                col[j] -= BigInt::one();
                lp = lp.equal(Constraint::from_ints(&col, 0));
            }
        }
        for i in 0..p {
            lp = lp.at_least(Constraint::from_ints(&crate::linalg::matrix::unit_vector(p, i), 0));
        }
        lp = lp
            .at_least(Constraint::from_ints(&unit, 1))
            .at_least(Constraint::from_ints(&gv, 1));
        match lp_feasible(&lp).expect("well-formed program") {
            Feasibility::Feasible(x) => primitive_integer_vector(&x),
            Feasibility::Infeasible(_) => return Ok(None),
        }
    };
    assert!(fits(&c), "global state failed exact re-verification");
    Ok(Some(GlobalState {
        stage,
        unit_value: dot(&c, &unit),
        element_value: dot(&c, &gv),
        functional: c,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Violation,
    Consistent,
    Unknown,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Violation => "VIOLATION",
            VerdictKind::Consistent => "CONSISTENT",
            VerdictKind::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub search: SearchReport,
    pub requests: Vec<StateRequest>,
    /// One entry per request, in order; empty for a violation.
    pub states: Vec<Option<StateCertificate>>,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn witness(&self) -> Option<&Witness> {
        self.search.witness.as_ref()
    }

    /// Deterministic JSON; the elapsed time is left out.
    pub fn to_json(&self) -> Value {
        let states: Vec<Value> = self
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| {
                json::object([
                    ("request", Value::from(i)),
                    ("certificate", s.as_ref().map_or(Value::Null, StateCertificate::to_json)),
                ])
            })
            .collect();
        json::object([
            ("kind", Value::from(self.kind.to_string())),
            ("params", self.search.params.to_json()),
            ("witness", self.witness().map_or(Value::Null, Witness::to_json)),
            ("state_certificates", Value::Array(states)),
            ("search", self.search.to_json()),
        ])
    }
}

/// Witness search, then (if no proved witness) one state search per request.
pub fn check_mf(
    system: &InductiveSystem,
    action: &K0Action,
    requests: Option<Vec<StateRequest>>,
    params: SearchParams,
) -> Result<Verdict> {
    let start = Instant::now();
    let requests = requests.unwrap_or_else(|| vec![StateRequest::default_for(system, action)]);
    let search = find_positive_coboundary(system, action, params)?;
    if search.is_violation() {
        return Ok(Verdict {
            kind: VerdictKind::Violation,
            search,
            requests,
            states: Vec::new(),
            elapsed: start.elapsed(),
        });
    }
    let states = requests
        .iter()
        .map(|r| find_invariant_state(system, action, r, params.max_stage))
        .collect::<Result<Vec<_>>>()?;
    let kind = if search.witness.is_none() && states.iter().all(Option::is_some) {
        VerdictKind::Consistent
    } else {
        VerdictKind::Unknown
    };
    Ok(Verdict {
        kind,
        search,
        requests,
        states,
        elapsed: start.elapsed(),
    })
}
