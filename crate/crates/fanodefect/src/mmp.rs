//! Combinatorial enumeration of numerically admissible MMP contraction
//! chains for weak-star Fano 3-folds, with the closed-form defect bounds as
//! cross-checks.

use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, thiserror::Error)]
pub enum MmpError {
    #[error("start degree {degree} is not admissible at index {index}")]
    InvalidStart { index: u8, degree: i64 },
    #[error("genus must lie in {{2,...,10,12}}, got {0}")]
    InvalidGenus(i64),
    #[error("index-2 degree parameter must lie in {{1,...,5}}, got {0}")]
    InvalidIndex2Degree(i64),
    #[error("the enumerator assumes the plane-free case")]
    PlaneNotExcluded,
}

/// Admissible anticanonical degrees of the rank-1 anticanonical models,
/// per index.
pub struct FanoDegreeTable;

impl FanoDegreeTable {
    pub const INDEX1: [i64; 10] = [2, 4, 6, 8, 10, 12, 14, 16, 18, 22];
    pub const INDEX2: [i64; 5] = [8, 16, 24, 32, 40];
    pub const INDEX3: [i64; 1] = [54];
    pub const INDEX4: [i64; 1] = [64];

    /// Degrees a chain state at the given index may occupy. For index 2 the
    /// lane extends to 8·7: intermediate weak Fanos reach the degrees of
    /// non-rank-1 index-2 3-folds (h³ ≤ 7) even though the anticanonical
    /// model table stops at h³ = 5.
    pub fn lane(index: u8) -> &'static [i64] {
        const INDEX2_LANE: [i64; 7] = [8, 16, 24, 32, 40, 48, 56];
        match index {
            1 => &Self::INDEX1,
            2 => &INDEX2_LANE,
            3 => &Self::INDEX3,
            4 => &Self::INDEX4,
            _ => &[],
        }
    }

    pub fn admissible(index: u8, degree: i64) -> bool {
        Self::lane(index).contains(&degree)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MmpState {
    pub degree: i64,
    pub index: u8,
    pub quadrics_remaining: u32,
    pub gen_degree_1: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum StepKind {
    E1 { a_gamma: i64, p_a: i64 },
    E2,
    QuadricToPoint,
    QuadricToCurve { p_a: i64 },
    Flop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ContractionStep {
    pub kind: StepKind,
    pub degree_delta: i64,
}

impl ContractionStep {
    pub fn is_divisorial(&self) -> bool {
        self.kind != StepKind::Flop
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EndState {
    FanoRank1,
    DelPezzoFibration { k: u32 },
    ConicBundle { base: &'static str, rho: u32 },
}

impl EndState {
    pub fn rho(&self) -> u32 {
        match self {
            EndState::FanoRank1 => 1,
            EndState::DelPezzoFibration { .. } => 2,
            EndState::ConicBundle { rho, .. } => *rho,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundCertificate {
    pub start: MmpState,
    pub chain: Vec<(MmpState, ContractionStep)>,
    pub end: EndState,
    pub final_state: MmpState,
    pub picard_rank_bound: i64,
    pub cl_rank_bound: i64,
    pub defect_bound: i64,
}

/// The four intersection numbers of Lemma 11, Eqs. (1)-(4), for an E1
/// contraction to a curve Γ on X' with the given data.
pub fn lemma11_profile(a3: i64, a_gamma: i64, p_a: i64) -> (i64, i64, i64, i64) {
    assert!(a3 > 0, "anticanonical degree must be positive");
    (
        a3 - 2 * a_gamma - 2 + 2 * p_a,
        a_gamma + 2 - 2 * p_a,
        -2 + 2 * p_a,
        -a_gamma + 2 - 2 * p_a,
    )
}

const P_A_CAP: i64 = 20;
const A_GAMMA_CAP: i64 = 40;

/// All admissible successor states under one divisorial contraction.
/// Quadric contractions come first in the returned list and are the only
/// steps that decrement the quadric budget; any other divisorial step
/// forfeits the remaining quadrics (they are contracted first or not at
/// all).
pub fn legal_steps(s: &MmpState, no_quadric: bool) -> Vec<(ContractionStep, MmpState)> {
    let mut out = vec![];
    if s.index == 1 && s.quadrics_remaining > 0 && !no_quadric {
        for p_a in 0..=P_A_CAP {
            let delta = 2 * (p_a + 1);
            if FanoDegreeTable::admissible(1, s.degree + delta) {
                let kind = if p_a == 0 {
                    StepKind::QuadricToPoint
                } else {
                    StepKind::QuadricToCurve { p_a }
                };
                out.push((
                    ContractionStep { kind, degree_delta: delta },
                    MmpState {
                        degree: s.degree + delta,
                        index: 1,
                        quadrics_remaining: s.quadrics_remaining - 1,
                        gen_degree_1: s.gen_degree_1,
                    },
                ));
            }
        }
    }
    match s.index {
        1 => {
            for target_index in [1u8, 2, 3, 4] {
                for &target in FanoDegreeTable::lane(target_index) {
                    let delta = target - s.degree;
                    if delta < 4 || delta % 2 != 0 {
                        continue;
                    }
                    // canonical E1 witness: p_a = 0, A'Γ = (delta - 2)/2,
                    // which satisfies A²E = A'Γ + 2 ≥ 2 automatically
                    let a_gamma = (delta - 2) / 2;
                    if a_gamma > A_GAMMA_CAP {
                        continue;
                    }
                    let next = MmpState {
                        degree: target,
                        index: target_index,
                        quadrics_remaining: 0,
                        gen_degree_1: s.gen_degree_1,
                    };
                    out.push((
                        ContractionStep {
                            kind: StepKind::E1 { a_gamma, p_a: 0 },
                            degree_delta: delta,
                        },
                        next,
                    ));
                    if delta == 8 {
                        out.push((
                            ContractionStep { kind: StepKind::E2, degree_delta: 8 },
                            next,
                        ));
                    }
                }
            }
        }
        2 => {
            // index-2 sources only admit flops and E2 contractions, and the
            // target index stays 2 (the lane is closed: 56 + 8 leaves it)
            let target = s.degree + 8;
            if FanoDegreeTable::admissible(2, target) {
                out.push((
                    ContractionStep { kind: StepKind::E2, degree_delta: 8 },
                    MmpState {
                        degree: target,
                        index: 2,
                        quadrics_remaining: 0,
                        gen_degree_1: s.gen_degree_1,
                    },
                ));
            }
        }
        _ => {} // index 3 and 4 states are terminal for divisorial steps
    }
    out
}

/// Most generous admissible end state for a final chain state.
fn best_end(s: &MmpState) -> EndState {
    if s.index >= 2 {
        // for index ≥ 2 the Mori fibre space alternatives do not appear at
        // the lane maximum, so the end is the rank-1 Fano itself
        EndState::FanoRank1
    } else {
        EndState::ConicBundle { base: "F0", rho: 3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartSpec {
    Genus(i64),
    Index2Degree(i64),
}

#[derive(Debug, Clone, Copy)]
pub struct MmpFlags {
    pub no_plane: bool,
    pub no_quadric: bool,
    /// None = automatic cap min(⌊(g+1)/3⌋, 10−g) for genus starts.
    pub quadric_cap: Option<u32>,
    pub gen_degree_1: bool,
}

impl Default for MmpFlags {
    fn default() -> Self {
        MmpFlags { no_plane: true, no_quadric: false, quadric_cap: None, gen_degree_1: false }
    }
}

pub fn auto_quadric_cap(g: i64) -> u32 {
    ((g + 1) / 3).min(10 - g).max(0) as u32
}

type Suffix = (i64, Vec<(MmpState, ContractionStep)>, EndState, MmpState);

fn better(a: &Suffix, b: &Suffix) -> bool {
    // maximize the rank bound; break ties by shortest chain, then by the
    // lexicographically smallest sequence of step kinds
    if a.0 != b.0 {
        return a.0 > b.0;
    }
    if a.1.len() != b.1.len() {
        return a.1.len() < b.1.len();
    }
    let ka: Vec<StepKind> = a.1.iter().map(|(_, st)| st.kind).collect();
    let kb: Vec<StepKind> = b.1.iter().map(|(_, st)| st.kind).collect();
    ka < kb
}

fn search(s: &MmpState, no_quadric: bool, memo: &mut HashMap<MmpState, Suffix>) -> Suffix {
    if let Some(hit) = memo.get(s) {
        return hit.clone();
    }
    let end = best_end(s);
    let mut best: Suffix = (end.rho() as i64, vec![], end, *s);
    for (step, next) in legal_steps(s, no_quadric) {
        let sub = search(&next, no_quadric, memo);
        let mut chain = vec![(*s, step)];
        chain.extend(sub.1.clone());
        let cand: Suffix = (1 + sub.0, chain, sub.2, sub.3);
        if better(&cand, &best) {
            best = cand;
        }
    }
    memo.insert(*s, best.clone());
    best
}

/// Exhaustive search for the chain maximizing the Picard-rank bound.
pub fn enumerate_bound(start: StartSpec, flags: MmpFlags) -> Result<BoundCertificate, MmpError> {
    if !flags.no_plane {
        return Err(MmpError::PlaneNotExcluded);
    }
    let initial = match start {
        StartSpec::Genus(g) => {
            if !(2..=10).contains(&g) && g != 12 {
                return Err(MmpError::InvalidGenus(g));
            }
            let quadrics = if flags.no_quadric {
                0
            } else {
                flags.quadric_cap.unwrap_or_else(|| auto_quadric_cap(g))
            };
            MmpState {
                degree: 2 * g - 2,
                index: 1,
                quadrics_remaining: quadrics,
                gen_degree_1: flags.gen_degree_1,
            }
        }
        StartSpec::Index2Degree(d) => {
            if !(1..=5).contains(&d) {
                return Err(MmpError::InvalidIndex2Degree(d));
            }
            MmpState {
                degree: 8 * d,
                index: 2,
                quadrics_remaining: 0,
                gen_degree_1: flags.gen_degree_1,
            }
        }
    };
    if !FanoDegreeTable::admissible(initial.index, initial.degree) {
        return Err(MmpError::InvalidStart { index: initial.index, degree: initial.degree });
    }
    let mut memo = HashMap::new();
    let (rank, chain, end, final_state) = search(&initial, flags.no_quadric, &mut memo);
    let divisorial = chain.iter().filter(|(_, st)| st.is_divisorial()).count() as i64;
    debug_assert_eq!(divisorial + end.rho() as i64, rank);
    Ok(BoundCertificate {
        start: initial,
        chain,
        end,
        final_state,
        picard_rank_bound: rank,
        cl_rank_bound: rank,
        defect_bound: rank - 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormVariant {
    Cor1,
    Cor2,
}

/// Literal closed-form defect bounds of Corollaries 1 and 2.
pub fn closed_form(g: i64, variant: ClosedFormVariant) -> Result<i64, MmpError> {
    if !(2..=10).contains(&g) && g != 12 {
        return Err(MmpError::InvalidGenus(g));
    }
    Ok(match variant {
        ClosedFormVariant::Cor1 => (12 - g) / 2 + 4,
        ClosedFormVariant::Cor2 => {
            let n = auto_quadric_cap(g) as i64;
            (12 - n - g) / 2 + 4 + n
        }
    })
}

/// Corollary 3: Picard-rank bound 8 − h³ for index-2 degree parameter d.
pub fn closed_form_index2(d: i64) -> Result<i64, MmpError> {
    if !(1..=5).contains(&d) {
        return Err(MmpError::InvalidIndex2Degree(d));
    }
    Ok(8 - d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundStatus {
    Proved,
    Conjectural,
}

/// Static reference bounds for plane-containing cases, by genus.
pub fn reference_table() -> Vec<(i64, i64, BoundStatus)> {
    vec![
        (2, 13, BoundStatus::Conjectural),
        (4, 8, BoundStatus::Proved),
        (5, 7, BoundStatus::Proved),
        (6, 5, BoundStatus::Proved),
        (7, 5, BoundStatus::Proved),
        (8, 5, BoundStatus::Proved),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_quadric_flags() -> MmpFlags {
        MmpFlags { no_quadric: true, ..MmpFlags::default() }
    }

    #[test]
    fn lemma11_examples() {
        for d in [4i64, 8, 22] {
            assert_eq!(lemma11_profile(d, 1, 0), (d - 4, 3, -2, 1));
            assert_eq!(lemma11_profile(d, 2, 0), (d - 6, 4, -2, 0));
            assert_eq!(lemma11_profile(d, 2, 1), (d - 4, 2, 0, -2));
        }
    }

    #[test]
    fn lemma11_identities() {
        for a3 in [2i64, 10, 22, 40] {
            for ag in 1..=10 {
                for pa in 0..=4 {
                    let (x3, a2e, ae2, _e3) = lemma11_profile(a3, ag, pa);
                    assert_eq!(a3 - x3, 2 * ag + 2 - 2 * pa);
                    assert_eq!(a2e + ae2, ag);
                }
            }
        }
    }

    #[test]
    fn successors_of_small_quartic_state() {
        let s = MmpState { degree: 4, index: 1, quadrics_remaining: 0, gen_degree_1: false };
        let succ: Vec<(u8, i64)> =
            legal_steps(&s, true).iter().map(|(_, n)| (n.index, n.degree)).collect();
        assert!(succ.contains(&(1, 8)));
        assert!(succ.contains(&(2, 8)));
        assert!(succ.contains(&(1, 12)));
        assert!(succ.contains(&(1, 16)));
        assert!(succ.contains(&(1, 22)));
        assert!(!succ.iter().any(|&(_, d)| d == 6));
    }

    #[test]
    fn index4_is_terminal() {
        let s = MmpState { degree: 64, index: 4, quadrics_remaining: 0, gen_degree_1: false };
        assert!(legal_steps(&s, true).is_empty());
    }

    #[test]
    fn quadric_budget_enables_small_steps() {
        let s = MmpState { degree: 4, index: 1, quadrics_remaining: 1, gen_degree_1: false };
        let succ = legal_steps(&s, false);
        assert!(succ
            .iter()
            .any(|(st, n)| st.kind == StepKind::QuadricToPoint && n.degree == 6));
        // the quadric branch consumes the budget
        assert!(succ
            .iter()
            .all(|(st, n)| st.kind != StepKind::QuadricToPoint || n.quadrics_remaining == 0));
        // with no_quadric the +2 step disappears
        assert!(!legal_steps(&s, true).iter().any(|(_, n)| n.degree == 6));
    }

    #[test]
    fn genus3_anchors() {
        let c = enumerate_bound(StartSpec::Genus(3), no_quadric_flags()).unwrap();
        assert_eq!(c.cl_rank_bound, 9);
        assert_eq!(c.defect_bound, 8);
        let c2 = enumerate_bound(StartSpec::Genus(3), MmpFlags::default()).unwrap();
        assert_eq!(c2.cl_rank_bound, 10);
        assert_eq!(c2.defect_bound, 9);
    }

    #[test]
    fn closed_forms_dominate_enumeration() {
        for g in (2..=10).chain([12]) {
            let c = enumerate_bound(StartSpec::Genus(g), no_quadric_flags()).unwrap();
            assert!(c.defect_bound <= closed_form(g, ClosedFormVariant::Cor1).unwrap(), "g={g}");
            let cq = enumerate_bound(StartSpec::Genus(g), MmpFlags::default()).unwrap();
            assert!(cq.defect_bound <= closed_form(g, ClosedFormVariant::Cor2).unwrap(), "g={g}");
        }
    }

    #[test]
    fn index2_matches_cor3() {
        for d in 1..=5 {
            let c = enumerate_bound(StartSpec::Index2Degree(d), no_quadric_flags()).unwrap();
            assert_eq!(c.picard_rank_bound, closed_form_index2(d).unwrap(), "d={d}");
            assert!(c.chain.iter().all(|(_, st)| st.kind == StepKind::E2));
        }
    }

    #[test]
    fn chain_invariants() {
        for g in (2..=10).chain([12]) {
            for flags in [no_quadric_flags(), MmpFlags::default()] {
                let c = enumerate_bound(StartSpec::Genus(g), flags).unwrap();
                assert!(c.chain.len() <= 16);
                let mut prev = c.start.degree - 1;
                for (state, step) in &c.chain {
                    assert!(state.degree > prev, "degrees strictly increase");
                    assert!(FanoDegreeTable::admissible(state.index, state.degree));
                    assert!(step.degree_delta >= 2);
                    prev = state.degree;
                }
                assert!(FanoDegreeTable::admissible(c.final_state.index, c.final_state.degree));
            }
        }
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form(3, ClosedFormVariant::Cor1).unwrap(), 8);
        assert_eq!(closed_form(3, ClosedFormVariant::Cor2).unwrap(), 9);
        assert_eq!(closed_form_index2(5).unwrap(), 3);
        assert_eq!(closed_form_index2(1).unwrap(), 7);
        assert!(closed_form(11, ClosedFormVariant::Cor1).is_err());
        assert!(closed_form_index2(6).is_err());
    }

    #[test]
    fn reference_table_entries() {
        let t = reference_table();
        assert!(t.contains(&(4, 8, BoundStatus::Proved)));
        assert!(t.contains(&(6, 5, BoundStatus::Proved)));
        assert!(t.contains(&(2, 13, BoundStatus::Conjectural)));
    }

    #[test]
    fn invalid_starts() {
        assert!(matches!(
            enumerate_bound(StartSpec::Genus(11), no_quadric_flags()),
            Err(MmpError::InvalidGenus(11))
        ));
        let bad = MmpFlags { no_plane: false, ..MmpFlags::default() };
        assert!(matches!(
            enumerate_bound(StartSpec::Genus(3), bad),
            Err(MmpError::PlaneNotExcluded)
        ));
    }
}
