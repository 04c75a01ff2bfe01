//! The induced action `α̂: F_r → OAut(K₀(A))` on an inductive system.
//!
//! Each generator (and its inverse) is given by stage maps
//! `T_{j,k}: Z^{p_k} → Z^{p_{m_j(k)}}` with `m_j` nondecreasing. Over a
//! stationary system the last declared map of a generator repeats with the
//! same stage offset, provided it already starts inside the stationary tail.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::dimgroup::{InductiveSystem, LimitElement};
use crate::linalg::lattice::reduced_row_basis;
use crate::linalg::matrix::{IntMatrix, IntVector};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageMap {
    pub from_stage: usize,
    pub to_stage: usize,
    pub matrix: IntMatrix,
}

/// One letter `s_j` or `s_j⁻¹`; `generator` is zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn forward(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn backward(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// `+j` for `s_j`, `−j` for `s_j⁻¹` (one-based).
    pub fn signed(self) -> i64 {
        let j = self.generator as i64 + 1;
        if self.inverse {
            -j
        } else {
            j
        }
    }
}

/// Reduced word in the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Freely reduces the letter sequence.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// From one-based signed indices; `0` is rejected.
    pub fn from_signed(indices: &[i64]) -> Option<Self> {
        let letters: Option<Vec<Letter>> = indices
            .iter()
            .map(|&i| match i {
                0 => None,
                i if i > 0 => Some(Letter::forward(i as usize - 1)),
                i => Some(Letter::backward((-i) as usize - 1)),
            })
            .collect();
        letters.map(Word::new)
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|l| l.signed()).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{}", l.generator + 1)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Words whose differences `g − α̂_w(g)` generate the stage lattices:
/// the generators themselves for `L = 1`, all nonempty reduced words of
/// length at most `L` over `s_j^{±1}` for `L ≥ 2`.
pub fn sigma_words(generators: usize, word_length: usize) -> Vec<Word> {
    if word_length == 0 {
        return Vec::new();
    }
    if word_length == 1 {
        return (0..generators).map(|j| Word::letter(Letter::forward(j))).collect();
    }
    let alphabet: Vec<Letter> = (0..generators)
        .flat_map(|j| [Letter::forward(j), Letter::backward(j)])
        .collect();
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..word_length {
        let mut next = Vec::new();
        for w in &layer {
            for &a in &alphabet {
                if w.0.last() == Some(&a.inv()) {
                    continue;
                }
                let mut v = w.0.clone();
                v.push(a);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Action {
    generators: usize,
    forward: Vec<Vec<StageMap>>,
    inverse: Vec<Vec<StageMap>>,
    stationary_tail: bool,
}

impl K0Action {
    /// Structural validation against `system`: stage maps start at stage 0,
    /// are consecutive, have nondecreasing targets and the right shapes.
    /// Entry signs and the limit identities are checked by
    /// [`K0Action::verify`], which reports rather than rejects.
    pub fn new(system: &InductiveSystem, forward: Vec<Vec<StageMap>>, inverse: Vec<Vec<StageMap>>) -> Result<Self> {
        Self::build("$.action", system, forward, inverse)
    }

    pub(crate) fn build(
        prefix: &str,
        system: &InductiveSystem,
        forward: Vec<Vec<StageMap>>,
        inverse: Vec<Vec<StageMap>>,
    ) -> Result<Self> {
        let generators = forward.len();
        if inverse.len() != generators {
            return Err(Error::invalid(
                format!("{prefix}.inverse"),
                format!("{} generators, but forward has {generators}", inverse.len()),
            ));
        }
        for (name, family) in [("forward", &forward), ("inverse", &inverse)] {
            for (j, maps) in family.iter().enumerate() {
                let path = format!("{prefix}.{name}[{j}]");
                if maps.is_empty() {
                    return Err(Error::invalid(path, "at least one stage map is required"));
                }
                for (k, m) in maps.iter().enumerate() {
                    let p = format!("{path}[{k}]");
                    if m.from_stage != k {
                        return Err(Error::invalid(
                            format!("{p}.from_stage"),
                            format!("expected {k} (stage maps must be consecutive from stage 0)"),
                        ));
                    }
                    if m.to_stage < m.from_stage {
                        return Err(Error::invalid(
                            format!("{p}.to_stage"),
                            "stage maps may not decrease the stage",
                        ));
                    }
                    if k > 0 && m.to_stage < maps[k - 1].to_stage {
                        return Err(Error::invalid(
                            format!("{p}.to_stage"),
                            "target stages must be nondecreasing",
                        ));
                    }
                    let src = system
                        .rank(m.from_stage)
                        .map_err(|e| Error::invalid(format!("{p}.from_stage"), e))?;
                    let dst = system
                        .rank(m.to_stage)
                        .map_err(|e| Error::invalid(format!("{p}.to_stage"), e))?;
                    if m.matrix.rows() != dst || m.matrix.cols() != src {
                        return Err(Error::invalid(
                            format!("{p}.matrix"),
                            format!("shape {}x{}, expected {dst}x{src}", m.matrix.rows(), m.matrix.cols()),
                        ));
                    }
                }
            }
        }
        let stationary_tail = match system.tail_start() {
            Some(t0) => {
                for (name, family) in [("forward", &forward), ("inverse", &inverse)] {
                    for (j, maps) in family.iter().enumerate() {
                        let last = maps.last().unwrap();
                        if last.from_stage < t0 {
                            return Err(Error::invalid(
                                format!("{prefix}.{name}[{j}]"),
                                format!(
                                    "over a stationary system the last stage map must start at or after stage {t0}"
                                ),
                            ));
                        }
                    }
                }
                true
            }
            None => false,
        };
        Ok(K0Action {
            generators,
            forward,
            inverse,
            stationary_tail,
        })
    }

    /// The trivial action with `generators` generators.
    pub fn identity(system: &InductiveSystem, generators: usize) -> Self {
        let top = system.last_stage().or(system.tail_start()).unwrap_or(0);
        let maps: Vec<StageMap> = (0..=top)
            .map(|k| StageMap {
                from_stage: k,
                to_stage: k,
                matrix: IntMatrix::identity(system.rank(k).expect("declared stage")),
            })
            .collect();
        K0Action::new(system, vec![maps.clone(); generators], vec![maps; generators])
            .expect("identity action is well formed")
    }

    /// Action on a one-stage system `Zᵖ` by fixed matrices.
    pub fn one_stage(system: &InductiveSystem, forward: Vec<IntMatrix>, inverse: Vec<IntMatrix>) -> Result<Self> {
        let wrap = |ms: Vec<IntMatrix>| -> Vec<Vec<StageMap>> {
            ms.into_iter()
                .map(|matrix| {
                    vec![StageMap {
                        from_stage: 0,
                        to_stage: 0,
                        matrix,
                    }]
                })
                .collect()
        };
        K0Action::new(system, wrap(forward), wrap(inverse))
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn forward_maps(&self) -> &[Vec<StageMap>] {
        &self.forward
    }

    pub fn inverse_maps(&self) -> &[Vec<StageMap>] {
        &self.inverse
    }

    /// Stage map of `letter` out of `stage`: target stage and matrix.
    pub fn map_at(&self, letter: Letter, stage: usize) -> Result<(usize, &IntMatrix)> {
        let family = if letter.inverse { &self.inverse } else { &self.forward };
        let maps = family.get(letter.generator).ok_or(Error::GeneratorCount {
            expected: self.generators,
            found: letter.generator + 1,
        })?;
        if let Some(m) = maps.get(stage) {
            return Ok((m.to_stage, &m.matrix));
        }
        let last = maps.last().unwrap();
        if self.stationary_tail {
            return Ok((last.to_stage + (stage - last.from_stage), &last.matrix));
        }
        Err(Error::HorizonExhausted {
            generator: letter.generator + 1,
            inverse: letter.inverse,
            stage,
        })
    }

    pub fn apply_letter(&self, system: &InductiveSystem, letter: Letter, e: &LimitElement) -> Result<LimitElement> {
        system.check_element(e)?;
        let (to, m) = self.map_at(letter, e.stage)?;
        system.check_stage(to)?;
        Ok(LimitElement::new(
            to,
            m.mul_vec(&e.vector).expect("shape checked at construction"),
        ))
    }

    /// `α̂_w(e)` with `α̂_{uv} = α̂_u ∘ α̂_v`: the rightmost letter acts first.
    /// The result sits at the stage the last applied map lands in.
    pub fn apply(&self, system: &InductiveSystem, w: &Word, e: &LimitElement) -> Result<LimitElement> {
        let mut cur = e.clone();
        system.check_element(&cur)?;
        for &l in w.letters().iter().rev() {
            cur = self.apply_letter(system, l, &cur)?;
        }
        Ok(cur)
    }

    /// `σ(g₁,…,g_r) = Σ_j (g_j − α̂_j(g_j))` at the first common stage.
    pub fn coboundary(&self, system: &InductiveSystem, g: &[LimitElement]) -> Result<LimitElement> {
        if g.len() != self.generators {
            return Err(Error::GeneratorCount {
                expected: self.generators,
                found: g.len(),
            });
        }
        let images: Vec<LimitElement> = g
            .iter()
            .enumerate()
            .map(|(j, gj)| self.apply_letter(system, Letter::forward(j), gj))
            .collect::<Result<_>>()?;
        let mut terms: Vec<(BigInt, &LimitElement)> = Vec::new();
        for (gj, aj) in g.iter().zip(&images) {
            terms.push((BigInt::one(), gj));
            terms.push((-BigInt::one(), aj));
        }
        if terms.is_empty() {
            return Ok(LimitElement::zero(0, system.rank(0)?));
        }
        system.combine(&terms, None)
    }

    /// Preimage under `σ` of `g − α̂_w(g)`, one slot per generator.
    fn word_preimage(&self, system: &InductiveSystem, w: &Word, g: &LimitElement) -> Result<Vec<LimitElement>> {
        let zero = LimitElement::zero(0, system.rank(0)?);
        let mut slots = vec![zero; self.generators];
        // g − α̂_{a w'}(g) = (g − α̂_{w'}(g)) + (f − α̂_a(f)),  f = α̂_{w'}(g).
        let letters = w.letters();
        for i in (0..letters.len()).rev() {
            let a = letters[i];
            let tail = Word(letters[i + 1..].to_vec());
            let f = self.apply(system, &tail, g)?;
            let contribution = if a.inverse {
                // f − α̂_{s⁻¹}(f) = −(h − α̂_s(h)),  h = α̂_{s⁻¹}(f).
                self.apply_letter(system, a, &f)?.neg()
            } else {
                f
            };
            let slot = &slots[a.generator];
            slots[a.generator] = system.combine(&[(BigInt::one(), slot), (BigInt::one(), &contribution)], None)?;
        }
        Ok(slots)
    }

    /// Generators `push_m(g − α̂_w(g))` of the stage lattice, `g` running
    /// over the stage-`source` basis and `w` over [`sigma_words`].
    pub fn sigma_generators(
        &self,
        system: &InductiveSystem,
        source: usize,
        target: usize,
        word_length: usize,
    ) -> Result<Vec<SigmaGenerator>> {
        let p = system.rank(source)?;
        system.check_stage(target)?;
        let mut out = Vec::new();
        for w in sigma_words(self.generators, word_length) {
            for i in 0..p {
                let g = LimitElement::basis(source, p, i);
                let image = self.apply(system, &w, &g)?;
                if image.stage > target {
                    return Err(Error::Precondition(format!(
                        "target stage {target} cannot receive the image of stage {source} under {w} (lands at {})",
                        image.stage
                    )));
                }
                let diff = system.sub(&g, &image)?;
                let value = system.push(&diff, target)?.vector;
                let preimage = self.word_preimage(system, &w, &g)?;
                out.push(SigmaGenerator {
                    word: w.clone(),
                    basis_index: i,
                    value,
                    preimage,
                });
            }
        }
        Ok(out)
    }

    /// HNF-reduced basis (as matrix columns in `Z^{p_target}`) of the stage
    /// lattice approximating `H_σ`.
    pub fn hsigma_stage_lattice(
        &self,
        system: &InductiveSystem,
        source: usize,
        target: usize,
        word_length: usize,
    ) -> Result<IntMatrix> {
        let gens = self.sigma_generators(system, source, target, word_length)?;
        let p = system.rank(target)?;
        let values: Vec<IntVector> = gens.into_iter().map(|g| g.value).collect();
        let basis = reduced_row_basis(&values, p);
        Ok(IntMatrix::from_columns(&basis, p))
    }

    /// Itemized check of the order-automorphism conditions up to `horizon`.
    pub fn verify(&self, system: &InductiveSystem, horizon: usize) -> ActionReport {
        let mut items = Vec::new();
        for j in 0..self.generators {
            for letter in [Letter::forward(j), Letter::backward(j)] {
                self.verify_letter(system, letter, horizon, &mut items);
            }
        }
        ActionReport { items }
    }

    fn verify_letter(&self, system: &InductiveSystem, letter: Letter, horizon: usize, items: &mut Vec<CheckItem>) {
        let item = |kind, stage, passed, detail: String| CheckItem {
            kind,
            generator: letter.generator,
            inverse: letter.inverse,
            stage,
            passed,
            detail,
        };
        let horizon = system.effective_horizon(horizon);
        for k in 0..=horizon {
            let Ok((to, matrix)) = self.map_at(letter, k) else {
                break;
            };
            if system.check_stage(to).is_err() {
                break;
            }
            let p = system.rank(k).expect("checked stage");
            match matrix.first_negative() {
                Some((r, c, v)) => items.push(item(
                    CheckKind::Positivity,
                    k,
                    false,
                    format!("entry ({r}, {c}) = {v} is negative"),
                )),
                None => items.push(item(CheckKind::Positivity, k, true, String::new())),
            }

            let unit = LimitElement::new(k, system.unit(k).expect("checked stage"));
            let image = self.apply_letter(system, letter, &unit);
            let ok = image
                .as_ref()
                .is_ok_and(|img| equal_in_limit(system, img, &unit, horizon));
            items.push(item(
                CheckKind::UnitPreservation,
                k,
                ok,
                if ok {
                    String::new()
                } else {
                    format!("image of the unit differs from the unit at stage {to}")
                },
            ));

            if system.connecting_map(k).is_ok() && self.map_at(letter, k + 1).is_ok() {
                let bad = (0..p).find(|&i| {
                    let e = LimitElement::basis(k, p, i);
                    let lhs = self.apply_letter(system, letter, &e);
                    let rhs = system
                        .push(&e, k + 1)
                        .and_then(|pe| self.apply_letter(system, letter, &pe));
                    !matches!((lhs, rhs), (Ok(a), Ok(b)) if equal_in_limit(system, &a, &b, horizon))
                });
                items.push(item(
                    CheckKind::CommutingSquare,
                    k,
                    bad.is_none(),
                    bad.map_or_else(String::new, |i| format!("square fails on basis vector {i}")),
                ));
            }

            if self.map_at(letter.inv(), to).is_ok() {
                let bad = (0..p).find(|&i| {
                    let e = LimitElement::basis(k, p, i);
                    let back = self
                        .apply_letter(system, letter, &e)
                        .and_then(|x| self.apply_letter(system, letter.inv(), &x));
                    !matches!(back, Ok(b) if equal_in_limit(system, &b, &e, horizon))
                });
                items.push(item(
                    CheckKind::InverseLaw,
                    k,
                    bad.is_none(),
                    bad.map_or_else(String::new, |i| format!("inverse does not undo basis vector {i}")),
                ));
            }
        }
    }
}

/// Equality after pushing both sides to a common stage, allowing further
/// pushes up to `horizon`.
pub fn equal_in_limit(system: &InductiveSystem, a: &LimitElement, b: &LimitElement, horizon: usize) -> bool {
    let start = a.stage.max(b.stage);
    let end = system.effective_horizon(horizon.max(start));
    (start..=end).any(|s| match (system.push(a, s), system.push(b, s)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    })
}

/// A generator of a stage lattice together with its `σ`-preimage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaGenerator {
    pub word: Word,
    pub basis_index: usize,
    /// `push_m(g − α̂_w(g))`.
    pub value: IntVector,
    /// `(g₁,…,g_r)` with `σ(g₁,…,g_r) = g − α̂_w(g)` in the limit.
    pub preimage: Vec<LimitElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Positivity,
    UnitPreservation,
    CommutingSquare,
    InverseLaw,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Positivity => "positivity",
            CheckKind::UnitPreservation => "unit preservation",
            CheckKind::CommutingSquare => "commuting square",
            CheckKind::InverseLaw => "inverse law",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub kind: CheckKind,
    pub generator: usize,
    pub inverse: bool,
    pub stage: usize,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok" } else { "FAIL" };
        let inv = if self.inverse { "^-1" } else { "" };
        write!(
            f,
            "{status}: {} of generator s{}{inv} at stage {}",
            self.kind,
            self.generator + 1,
            self.stage
        )?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionReport {
    pub items: Vec<CheckItem>,
}

impl ActionReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::to_bigints;

    fn z3_cycle() -> (InductiveSystem, K0Action) {
        let sys = InductiveSystem::new(vec![3], vec![], to_bigints(&[1, 1, 1]), false).unwrap();
        let p = IntMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let act = K0Action::one_stage(&sys, vec![p.clone()], vec![p.transpose()]).unwrap();
        (sys, act)
    }

    #[test]
    fn word_reduction_and_signed_form() {
        let w = Word::from_signed(&[1, 2, -2, -1, 3]).unwrap();
        assert_eq!(w.to_signed(), vec![3]);
        assert!(Word::from_signed(&[0]).is_none());
        assert_eq!(Word::from_signed(&[1, -2]).unwrap().inverse().to_signed(), vec![2, -1]);
    }

    #[test]
    fn sigma_word_counts() {
        assert_eq!(sigma_words(2, 1).len(), 2);
        // 4 letters, then 4·3 reduced two-letter words.
        assert_eq!(sigma_words(2, 2).len(), 4 + 12);
    }

    #[test]
    fn cycle_of_order_three() {
        let (sys, act) = z3_cycle();
        let w = Word::from_signed(&[1, 1, 1]).unwrap();
        for i in 0..3 {
            let e = LimitElement::basis(0, 3, i);
            assert_eq!(act.apply(&sys, &w, &e).unwrap(), e);
        }
        let e = LimitElement::from_i64(0, &[5, -2, 7]);
        assert_eq!(act.apply(&sys, &Word::empty(), &e).unwrap(), e);
    }

    #[test]
    fn coboundary_trivial_cases() {
        let (sys, act) = z3_cycle();
        let zero = LimitElement::zero(0, 3);
        assert!(act.coboundary(&sys, &[zero]).unwrap().is_stage_zero());
        let id = K0Action::identity(&sys, 2);
        let g = LimitElement::from_i64(0, &[1, 2, 3]);
        assert!(id.coboundary(&sys, &[g.clone(), g]).unwrap().is_stage_zero());
        assert!(matches!(
            id.coboundary(&sys, &[LimitElement::zero(0, 3)]),
            Err(Error::GeneratorCount { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn cycle_lattice_is_sum_zero_plane() {
        let (sys, act) = z3_cycle();
        let basis = act.hsigma_stage_lattice(&sys, 0, 0, 1).unwrap();
        assert_eq!(basis.cols(), 2);
        // HNF of {e_i − e_{i+1}}: rows (1,0,−1), (0,1,−1).
        assert_eq!(basis.transpose(), IntMatrix::from_i64(&[&[1, 0, -1], &[0, 1, -1]]));
        assert!(
            K0Action::identity(&sys, 1)
                .hsigma_stage_lattice(&sys, 0, 0, 1)
                .unwrap()
                .cols()
                == 0
        );
    }

    #[test]
    fn verify_reports() {
        let (sys, act) = z3_cycle();
        assert!(act.verify(&sys, 0).all_passed());

        let neg = IntMatrix::from_i64(&[&[1, -1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let bad = K0Action::one_stage(&sys, vec![neg], vec![IntMatrix::identity(3)]).unwrap();
        let report = bad.verify(&sys, 0);
        let pos = report.failures().find(|i| i.kind == CheckKind::Positivity).unwrap();
        assert_eq!(pos.detail, "entry (0, 1) = -1 is negative");
        assert!(!pos.inverse);

        let sys2 = InductiveSystem::new(vec![2], vec![], to_bigints(&[1, 1]), false).unwrap();
        let t = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let broken = K0Action::one_stage(&sys2, vec![t.clone()], vec![t.transpose()]).unwrap();
        let report = broken.verify(&sys2, 0);
        assert!(report
            .failures()
            .any(|i| i.kind == CheckKind::InverseLaw && i.stage == 0 && !i.inverse));
    }

    #[test]
    fn inverse_letter_preimages() {
        let (sys, act) = z3_cycle();
        for w in sigma_words(1, 3) {
            for i in 0..3 {
                let g = LimitElement::basis(0, 3, i);
                let diff = sys.sub(&g, &act.apply(&sys, &w, &g).unwrap()).unwrap();
                let pre = act.word_preimage(&sys, &w, &g).unwrap();
                let sig = act.coboundary(&sys, &pre).unwrap();
                assert!(equal_in_limit(&sys, &sig, &diff, 0), "word {w}");
            }
        }
    }
}
