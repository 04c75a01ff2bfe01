//! Dimension groups as inductive limits `Z^{p₀} → Z^{p₁} → …` of simplicial
//! ordered groups along nonnegative integer matrices.
//!
//! A system is either *finite* (a declared prefix; its limit is the last
//! stage) or *stationary* (the last declared connecting map repeats
//! forever). Queries about the limit that no finite amount of computation
//! can settle return [`Tristate::Unknown`].

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::lp::{lp_feasible, Constraint, LinearProgram};
use crate::linalg::matrix::{vec_is_nonnegative, vec_is_zero, IntMatrix, IntVector};
use crate::linalg::normal_form::rank;
use crate::{Error, Result};

/// An element of the limit group, represented at a concrete stage.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LimitElement {
    pub stage: usize,
    pub vector: IntVector,
}

impl LimitElement {
    pub fn new(stage: usize, vector: IntVector) -> Self {
        LimitElement { stage, vector }
    }

    pub fn from_i64(stage: usize, v: &[i64]) -> Self {
        LimitElement::new(stage, v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(stage: usize, rank: usize) -> Self {
        LimitElement::new(stage, vec![BigInt::zero(); rank])
    }

    pub fn basis(stage: usize, rank: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); rank];
        v[i] = BigInt::one();
        LimitElement::new(stage, v)
    }

    pub fn is_stage_zero(&self) -> bool {
        vec_is_zero(&self.vector)
    }

    pub fn is_stage_nonnegative(&self) -> bool {
        vec_is_nonnegative(&self.vector)
    }

    pub fn neg(&self) -> LimitElement {
        LimitElement::new(self.stage, self.vector.iter().map(|x| -x).collect())
    }

    /// Coordinatewise positive and negative parts at the element's own stage.
    pub fn positive_parts(&self) -> (LimitElement, LimitElement) {
        let pos = self
            .vector
            .iter()
            .map(|x| if x.is_positive() { x.clone() } else { BigInt::zero() });
        let neg = self
            .vector
            .iter()
            .map(|x| if x.is_negative() { -x } else { BigInt::zero() });
        (
            LimitElement::new(self.stage, pos.collect()),
            LimitElement::new(self.stage, neg.collect()),
        )
    }
}

/// Answer to a limit question, tagged with the stage that settled it or the
/// horizon that was searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tristate {
    Yes(usize),
    No(usize),
    Unknown(usize),
}

impl Tristate {
    pub fn is_yes(self) -> bool {
        matches!(self, Tristate::Yes(_))
    }

    pub fn is_no(self) -> bool {
        matches!(self, Tristate::No(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StageInjectivity {
    /// Source stage of the connecting map.
    pub stage: usize,
    pub injective: bool,
}

/// Validated inductive system with eagerly propagated order units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductiveSystem {
    ranks: Vec<usize>,
    maps: Vec<IntMatrix>,
    stationary: bool,
    units: Vec<IntVector>,
    injective: Vec<bool>,
}

impl InductiveSystem {
    pub fn new(ranks: Vec<usize>, maps: Vec<IntMatrix>, unit: IntVector, stationary: bool) -> Result<Self> {
        Self::build("$.system", ranks, maps, unit, stationary)
    }

    /// Stationary system `Zᵖ → Zᵖ → …` along a single square matrix.
    pub fn stationary(matrix: IntMatrix, unit: IntVector) -> Result<Self> {
        let p = matrix.rows();
        Self::new(vec![p, p], vec![matrix], unit, true)
    }

    pub(crate) fn build(
        prefix: &str,
        ranks: Vec<usize>,
        maps: Vec<IntMatrix>,
        unit: IntVector,
        stationary: bool,
    ) -> Result<Self> {
        if ranks.len() != maps.len() + 1 {
            return Err(Error::invalid(
                format!("{prefix}.stage_ranks"),
                format!(
                    "{} ranks given for {} connecting maps (need one more rank than maps)",
                    ranks.len(),
                    maps.len()
                ),
            ));
        }
        if let Some(k) = ranks.iter().position(|&p| p == 0) {
            return Err(Error::invalid(
                format!("{prefix}.stage_ranks[{k}]"),
                "rank must be at least 1",
            ));
        }
        for (k, a) in maps.iter().enumerate() {
            let path = format!("{prefix}.connecting_maps[{k}]");
            if a.rows() != ranks[k + 1] || a.cols() != ranks[k] {
                return Err(Error::invalid(
                    path,
                    format!(
                        "shape {}x{}, expected {}x{}",
                        a.rows(),
                        a.cols(),
                        ranks[k + 1],
                        ranks[k]
                    ),
                ));
            }
            if let Some((i, j, v)) = a.first_negative() {
                return Err(Error::invalid(
                    format!("{path}[{i}][{j}]"),
                    format!("negative entry {v}"),
                ));
            }
        }
        if unit.len() != ranks[0] {
            return Err(Error::invalid(
                format!("{prefix}.unit"),
                format!("length {}, expected {}", unit.len(), ranks[0]),
            ));
        }
        if let Some(i) = unit.iter().position(|x| x < &BigInt::one()) {
            return Err(Error::invalid(
                format!("{prefix}.unit[{i}]"),
                "order unit entries must be at least 1",
            ));
        }
        let mut units = vec![unit];
        for (k, a) in maps.iter().enumerate() {
            let next = a.mul_vec(units.last().unwrap()).unwrap();
            if let Some(i) = next.iter().position(|x| x < &BigInt::one()) {
                return Err(Error::invalid(
                    format!("{prefix}.connecting_maps[{k}]"),
                    format!("row {i} is zero, so the propagated unit vanishes there"),
                ));
            }
            units.push(next);
        }
        if stationary {
            let Some(tail) = maps.last() else {
                return Err(Error::invalid(
                    format!("{prefix}.connecting_maps"),
                    "a stationary system needs at least one connecting map",
                ));
            };
            if !tail.is_square() {
                return Err(Error::invalid(
                    format!("{prefix}.connecting_maps[{}]", maps.len() - 1),
                    "the repeated map of a stationary system must be square",
                ));
            }
        }
        let injective = maps.iter().map(|a| rank(a) == a.cols()).collect();
        Ok(InductiveSystem {
            ranks,
            maps,
            stationary,
            units,
            injective,
        })
    }

    pub fn is_stationary(&self) -> bool {
        self.stationary
    }

    /// Declared stage ranks `p₀, p₁, …` (the prefix).
    pub fn declared_ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Declared connecting maps; `maps[k]` goes from stage `k` to `k + 1`.
    pub fn declared_maps(&self) -> &[IntMatrix] {
        &self.maps
    }

    /// The last stage of a finite system; `None` when stationary.
    pub fn last_stage(&self) -> Option<usize> {
        (!self.stationary).then(|| self.ranks.len() - 1)
    }

    /// First stage from which the connecting map is the repeated one.
    pub fn tail_start(&self) -> Option<usize> {
        self.stationary.then(|| self.maps.len() - 1)
    }

    pub fn tail_matrix(&self) -> Option<&IntMatrix> {
        if self.stationary {
            self.maps.last()
        } else {
            None
        }
    }

    /// Clamps a horizon to what the system can answer.
    pub fn effective_horizon(&self, horizon: usize) -> usize {
        self.last_stage().map_or(horizon, |last| horizon.min(last))
    }

    pub fn check_stage(&self, stage: usize) -> Result<()> {
        match self.last_stage() {
            Some(last) if stage > last => Err(Error::StageOutOfRange { stage, last }),
            _ => Ok(()),
        }
    }

    pub fn rank(&self, stage: usize) -> Result<usize> {
        self.check_stage(stage)?;
        Ok(self.ranks[stage.min(self.ranks.len() - 1)])
    }

    /// Connecting map from `stage` to `stage + 1`.
    pub fn connecting_map(&self, stage: usize) -> Result<&IntMatrix> {
        self.check_stage(stage + 1)?;
        Ok(&self.maps[stage.min(self.maps.len() - 1)])
    }

    pub fn map_is_injective(&self, stage: usize) -> Result<bool> {
        self.check_stage(stage + 1)?;
        Ok(self.injective[stage.min(self.maps.len() - 1)])
    }

    /// Order unit `[1]` at `stage`.
    pub fn unit(&self, stage: usize) -> Result<IntVector> {
        if stage < self.units.len() {
            return Ok(self.units[stage].clone());
        }
        let last = self.units.len() - 1;
        self.push_vector(last, &self.units[last], stage)
    }

    pub fn unit_element(&self) -> LimitElement {
        LimitElement::new(0, self.units[0].clone())
    }

    /// Validates that `vector` lives in `Z^{p_stage}`.
    pub fn element(&self, stage: usize, vector: IntVector) -> Result<LimitElement> {
        let p = self.rank(stage)?;
        if vector.len() != p {
            return Err(Error::VectorLength {
                stage,
                expected: p,
                found: vector.len(),
            });
        }
        Ok(LimitElement::new(stage, vector))
    }

    pub fn check_element(&self, e: &LimitElement) -> Result<()> {
        let p = self.rank(e.stage)?;
        if e.vector.len() != p {
            return Err(Error::VectorLength {
                stage: e.stage,
                expected: p,
                found: e.vector.len(),
            });
        }
        Ok(())
    }

    pub fn push_vector(&self, from: usize, v: &[BigInt], to: usize) -> Result<IntVector> {
        if to < from {
            return Err(Error::Precondition(format!(
                "cannot push from stage {from} back to stage {to}"
            )));
        }
        self.check_stage(to)?;
        let mut cur = v.to_vec();
        for k in from..to {
            cur = self.connecting_map(k)?.mul_vec(&cur).ok_or(Error::VectorLength {
                stage: k,
                expected: self.ranks[k.min(self.ranks.len() - 1)],
                found: cur.len(),
            })?;
        }
        Ok(cur)
    }

    /// `A_{to−1}·…·A_{e.stage}·e`.
    pub fn push(&self, e: &LimitElement, to: usize) -> Result<LimitElement> {
        self.check_element(e)?;
        Ok(LimitElement::new(to, self.push_vector(e.stage, &e.vector, to)?))
    }

    /// Matrix of the composite map from stage `from` to stage `to`.
    pub fn push_matrix(&self, from: usize, to: usize) -> Result<IntMatrix> {
        if to < from {
            return Err(Error::Precondition(format!(
                "cannot push from stage {from} back to stage {to}"
            )));
        }
        let mut m = IntMatrix::identity(self.rank(from)?);
        for k in from..to {
            m = self.connecting_map(k)?.mul(&m).expect("connecting map shapes chain");
        }
        Ok(m)
    }

    /// `Σ cᵢ·eᵢ`, computed at the largest stage among the terms (or `at`,
    /// when given and later).
    pub fn combine(&self, terms: &[(BigInt, &LimitElement)], at: Option<usize>) -> Result<LimitElement> {
        let stage = terms
            .iter()
            .map(|(_, e)| e.stage)
            .chain(at)
            .max()
            .ok_or_else(|| Error::Precondition("empty combination without a target stage".into()))?;
        let mut acc = vec![BigInt::zero(); self.rank(stage)?];
        for (c, e) in terms {
            if c.is_zero() {
                continue;
            }
            let v = self.push(e, stage)?.vector;
            for (a, x) in acc.iter_mut().zip(v) {
                *a += c * x;
            }
        }
        Ok(LimitElement::new(stage, acc))
    }

    pub fn sub(&self, a: &LimitElement, b: &LimitElement) -> Result<LimitElement> {
        self.combine(&[(BigInt::one(), a), (-BigInt::one(), b)], None)
    }

    /// Index into the declared maps of the first map at or after `stage`;
    /// the repeated tail of a stationary system is never skipped.
    fn first_map_from(&self, stage: usize) -> usize {
        if self.stationary {
            stage.min(self.maps.len() - 1)
        } else {
            stage.min(self.maps.len())
        }
    }

    /// Whether every connecting map from `stage` onward is injective.
    pub fn injective_from(&self, stage: usize) -> bool {
        let start = self.first_map_from(stage);
        self.injective[start..].iter().all(|&b| b)
    }

    /// Whether no connecting map from `stage` onward has a zero column, so
    /// nonzero nonnegative vectors stay nonzero forever.
    pub fn column_faithful_from(&self, stage: usize) -> bool {
        let start = self.first_map_from(stage);
        self.maps[start..].iter().all(|a| a.zero_column().is_none())
    }

    /// Injectivity flag of each connecting map `k → k+1` with `k < horizon`.
    pub fn injectivity_report(&self, horizon: usize) -> Vec<StageInjectivity> {
        let h = self.effective_horizon(horizon);
        (0..h)
            .map(|stage| StageInjectivity {
                stage,
                injective: self.injective[stage.min(self.maps.len() - 1)],
            })
            .collect()
    }

    /// Positivity in the limit.
    ///
    /// `Yes(m)` for the least `m ≤ horizon` with `push(e, m) ≥ 0`. `No(s)`
    /// only with a proof: either `s` is the last stage of a finite system and
    /// the vector there has a negative entry, or (stationary tail `A`) a row
    /// vector `c ≥ 0` with `c·A = λ·c`, `λ ≥ 1`, and `c·push(e, s) < 0`
    /// exists, which keeps a negative entry at every later stage.
    pub fn is_positive(&self, e: &LimitElement, horizon: usize) -> Result<Tristate> {
        self.check_element(e)?;
        let h = self.effective_horizon(horizon.max(e.stage));
        let mut v = e.vector.clone();
        for m in e.stage..=h {
            if m > e.stage {
                v = self.connecting_map(m - 1)?.mul_vec(&v).unwrap();
            }
            if vec_is_nonnegative(&v) {
                return Ok(Tristate::Yes(m));
            }
        }
        if self.last_stage() == Some(h) {
            return Ok(Tristate::No(h));
        }
        if let Some((s, _)) = self.nonpositivity_functional(e)? {
            return Ok(Tristate::No(s));
        }
        Ok(Tristate::Unknown(h))
    }

    /// Searches `λ = 1, …, max row sum` for a nonnegative left
    /// `λ`-eigenvector of the tail matrix that is negative on `e`.
    pub fn nonpositivity_functional(&self, e: &LimitElement) -> Result<Option<(usize, IntVector)>> {
        let (Some(tail), Some(t0)) = (self.tail_matrix(), self.tail_start()) else {
            return Ok(None);
        };
        let s = e.stage.max(t0);
        let v = self.push(e, s)?.vector;
        let p = tail.rows();
        let max_row: BigInt = (0..p)
            .map(|i| tail.row(i).iter().sum::<BigInt>())
            .max()
            .unwrap_or_else(BigInt::zero);
        let mut lambda = BigInt::one();
        while lambda <= max_row {
            let mut lp = LinearProgram::new(p);
            for j in 0..p {
                let mut col = tail.column(j);
                col[j] -= &lambda;
                lp = lp.equal(Constraint::from_ints(&col, 0));
            }
            for i in 0..p {
                lp = lp.at_least(Constraint::from_ints(&crate::linalg::matrix::unit_vector(p, i), 0));
            }
            let neg_v: IntVector = v.iter().map(|x| -x).collect();
            lp = lp.at_least(Constraint::from_ints(&neg_v, 1));
            if let Some(point) = lp_feasible(&lp).expect("well-formed program").point() {
                let c = crate::linalg::lattice::primitive_integer_vector(point);
                return Ok(Some((s, c)));
            }
            lambda += 1;
        }
        Ok(None)
    }

    /// Equality with zero in the limit.
    ///
    /// `Yes(m)` when `push(e, m) = 0` for some `m ≤ horizon`; `No(m)` when the
    /// vector is nonzero at a stage `m` from which every connecting map is
    /// injective (at the last stage of a finite system this is vacuous).
    pub fn is_zero(&self, e: &LimitElement, horizon: usize) -> Result<Tristate> {
        self.check_element(e)?;
        let h = self.effective_horizon(horizon.max(e.stage));
        let mut v = e.vector.clone();
        for m in e.stage..=h {
            if m > e.stage {
                v = self.connecting_map(m - 1)?.mul_vec(&v).unwrap();
            }
            if vec_is_zero(&v) {
                return Ok(Tristate::Yes(m));
            }
            if self.injective_from(m) {
                return Ok(Tristate::No(m));
            }
        }
        Ok(Tristate::Unknown(h))
    }
}
