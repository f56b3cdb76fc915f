//! The combinatorial model: explicit profiles on labelled people, exhaustive
//! weight enumeration, and the decomposition of a profile into connected
//! components.
//!
//! A [`Profile`] is an independent pair of partial matchings between `m`
//! labelled men and `n` labelled women: marriage edges (weight `x`) and
//! affair edges (weight `y`). Each person has at most one spouse and at most
//! one lover; one's spouse and lover may coincide.
//!
//! Every person is incident to at most one edge of each color, so the
//! two-colored relationship graph has maximum degree two and its connected
//! components are paths and alternating cycles. The seven possible shapes:
//!
//! - `I` / `Ia`: an isolated man / woman.
//! - `II`: a path with `k` marriages and `k-1` affairs; its endpoints are a
//!   married, unloved man and a married, unloved woman. `k = 1` is an
//!   isolated married couple.
//! - `IIa`: the same with marriage and affair exchanged. `k = 1` is an
//!   isolated affair pair.
//! - `III`: a path with both endpoints men, `k` marriages, `k` affairs and
//!   `k + 1` men. `IIIa`: both endpoints women.
//! - `IV`: an alternating cycle with `k` marriages and `k` affairs; `k = 1`
//!   is the doubled edge where spouse and lover coincide.
//!
//! The closed-form generating functions of the cases are built here from
//! the series primitives and summed by [`all_components_series`]; the
//! exponential of that sum must reproduce the pair-product enumerator,
//! which is the identity this crate exists to check.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::WeightPoly;
use crate::series::BiSeries;

/// Per-dimension bound for the marital (single-matching) enumeration.
pub const DEFAULT_MARITAL_LIMIT: u32 = 6;
/// Per-dimension bound for the full two-matching enumeration.
pub const DEFAULT_FULL_LIMIT: u32 = 4;

/// Validation failures for profile data, naming the offending label.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("man {0} has more than one spouse")]
    ManMultipleSpouses(u32),
    #[error("woman {0} has more than one spouse")]
    WomanMultipleSpouses(u32),
    #[error("man {0} has more than one lover")]
    ManMultipleLovers(u32),
    #[error("woman {0} has more than one lover")]
    WomanMultipleLovers(u32),
    #[error("man label {label} out of range 1..={m}")]
    ManLabelOutOfRange { label: u32, m: u32 },
    #[error("woman label {label} out of range 1..={n}")]
    WomanLabelOutOfRange { label: u32, n: u32 },
}

/// Guard against combinatorial explosion in the exhaustive enumerations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("enumeration limit exceeded: ({m}, {n}) but both sides must be <= {limit}")]
pub struct LimitExceeded {
    pub m: u32,
    pub n: u32,
    pub limit: u32,
}

#[derive(Debug, Clone, Deserialize)]
struct RawProfile {
    m: u32,
    n: u32,
    marriages: Vec<(u32, u32)>,
    affairs: Vec<(u32, u32)>,
}

/// A marital-extramarital profile: two independent partial matchings on the
/// same labelled population. Labels are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile")]
pub struct Profile {
    m: u32,
    n: u32,
    marriages: Vec<(u32, u32)>,
    affairs: Vec<(u32, u32)>,
}

impl TryFrom<RawProfile> for Profile {
    type Error = ProfileError;

    fn try_from(raw: RawProfile) -> Result<Self, Self::Error> {
        Profile::new(raw.m, raw.n, raw.marriages, raw.affairs)
    }
}

impl Profile {
    /// Validate and canonicalize (edge lists sorted) a profile.
    pub fn new(
        m: u32,
        n: u32,
        mut marriages: Vec<(u32, u32)>,
        mut affairs: Vec<(u32, u32)>,
    ) -> Result<Self, ProfileError> {
        check_matching(&marriages, m, n, true)?;
        check_matching(&affairs, m, n, false)?;
        marriages.sort_unstable();
        affairs.sort_unstable();
        Ok(Self {
            m,
            n,
            marriages,
            affairs,
        })
    }

    pub fn men(&self) -> u32 {
        self.m
    }

    pub fn women(&self) -> u32 {
        self.n
    }

    pub fn marriages(&self) -> &[(u32, u32)] {
        &self.marriages
    }

    pub fn affairs(&self) -> &[(u32, u32)] {
        &self.affairs
    }

    /// `x^{#marriages} * y^{#affairs}`.
    pub fn weight(&self) -> WeightPoly {
        WeightPoly::monomial(self.marriages.len() as u32, self.affairs.len() as u32)
    }
}

fn check_matching(edges: &[(u32, u32)], m: u32, n: u32, marital: bool) -> Result<(), ProfileError> {
    let mut man_used = vec![false; m as usize + 1];
    let mut woman_used = vec![false; n as usize + 1];
    for &(man, woman) in edges {
        if man == 0 || man > m {
            return Err(ProfileError::ManLabelOutOfRange { label: man, m });
        }
        if woman == 0 || woman > n {
            return Err(ProfileError::WomanLabelOutOfRange { label: woman, n });
        }
        if std::mem::replace(&mut man_used[man as usize], true) {
            return Err(if marital {
                ProfileError::ManMultipleSpouses(man)
            } else {
                ProfileError::ManMultipleLovers(man)
            });
        }
        if std::mem::replace(&mut woman_used[woman as usize], true) {
            return Err(if marital {
                ProfileError::WomanMultipleSpouses(woman)
            } else {
                ProfileError::WomanMultipleLovers(woman)
            });
        }
    }
    Ok(())
}

/// Every partial matching between men `1..=m` and women `1..=n`, built by
/// assigning each man in turn either no partner or an unused woman.
pub fn partial_matchings(m: u32, n: u32) -> Vec<Vec<(u32, u32)>> {
    fn recurse(
        man: u32,
        m: u32,
        n: u32,
        woman_used: &mut Vec<bool>,
        current: &mut Vec<(u32, u32)>,
        out: &mut Vec<Vec<(u32, u32)>>,
    ) {
        if man > m {
            out.push(current.clone());
            return;
        }
        recurse(man + 1, m, n, woman_used, current, out);
        for woman in 1..=n {
            if !woman_used[woman as usize] {
                woman_used[woman as usize] = true;
                current.push((man, woman));
                recurse(man + 1, m, n, woman_used, current, out);
                current.pop();
                woman_used[woman as usize] = false;
            }
        }
    }

    let mut out = Vec::new();
    let mut woman_used = vec![false; n as usize + 1];
    recurse(1, m, n, &mut woman_used, &mut Vec::new(), &mut out);
    out
}

/// Brute-force oracle for `hermite_poly`: the sum of `x^{size}` over every
/// partial matching on `(m, n)`.
pub fn enumerate_marital(m: u32, n: u32, limit: u32) -> Result<WeightPoly, LimitExceeded> {
    if m > limit || n > limit {
        return Err(LimitExceeded { m, n, limit });
    }
    let mut total = WeightPoly::zero();
    for matching in partial_matchings(m, n) {
        total += &WeightPoly::monomial(matching.len() as u32, 0);
    }
    debug_assert!(total.has_positive_integer_coeffs());
    Ok(total)
}

/// Brute-force oracle for `hermite_pair_poly`: the sum of `x^k y^l` over
/// every ordered pair (marriage matching, affair matching).
pub fn enumerate_full(m: u32, n: u32, limit: u32) -> Result<WeightPoly, LimitExceeded> {
    if m > limit || n > limit {
        return Err(LimitExceeded { m, n, limit });
    }
    let matchings = partial_matchings(m, n);
    let mut total = WeightPoly::zero();
    for marriages in &matchings {
        for affairs in &matchings {
            total += &WeightPoly::monomial(marriages.len() as u32, affairs.len() as u32);
        }
    }
    debug_assert!(total.has_positive_integer_coeffs());
    Ok(total)
}

/// Every profile on `(m, n)`: all ordered pairs of partial matchings.
pub fn all_profiles(m: u32, n: u32, limit: u32) -> Result<Vec<Profile>, LimitExceeded> {
    if m > limit || n > limit {
        return Err(LimitExceeded { m, n, limit });
    }
    let matchings = partial_matchings(m, n);
    let mut out = Vec::with_capacity(matchings.len() * matchings.len());
    for marriages in &matchings {
        for affairs in &matchings {
            out.push(
                Profile::new(m, n, marriages.clone(), affairs.clone())
                    .expect("generated matchings are valid"),
            );
        }
    }
    Ok(out)
}

/// The seven connected-component shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    I,
    Ia,
    II,
    IIa,
    III,
    IIIa,
    IV,
}

impl CaseTag {
    pub const ALL: [CaseTag; 7] = [
        CaseTag::I,
        CaseTag::Ia,
        CaseTag::II,
        CaseTag::IIa,
        CaseTag::III,
        CaseTag::IIIa,
        CaseTag::IV,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::I => "I",
            CaseTag::Ia => "Ia",
            CaseTag::II => "II",
            CaseTag::IIa => "IIa",
            CaseTag::III => "III",
            CaseTag::IIIa => "IIIa",
            CaseTag::IV => "IV",
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown case tag '{0}' (expected one of I, Ia, II, IIa, III, IIIa, IV)")]
pub struct UnknownCaseTag(pub String);

impl std::str::FromStr for CaseTag {
    type Err = UnknownCaseTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseTag::ALL
            .into_iter()
            .find(|tag| tag.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownCaseTag(s.to_string()))
    }
}

/// One connected component of a profile, with its members in path or cycle
/// order. `k` is the case's size parameter (number of marriages for `II`,
/// of affairs for `IIa`, of marriage/affair pairs for `III`/`IIIa`/`IV`);
/// it is 0 for the isolated cases `I`/`Ia`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub tag: CaseTag,
    pub k: usize,
    pub men: Vec<u32>,
    pub women: Vec<u32>,
}

impl Component {
    /// The case's weight monomial.
    pub fn weight(&self) -> WeightPoly {
        let k = self.k as u32;
        match self.tag {
            CaseTag::I | CaseTag::Ia => WeightPoly::one(),
            CaseTag::II => WeightPoly::monomial(k, k - 1),
            CaseTag::IIa => WeightPoly::monomial(k - 1, k),
            CaseTag::III | CaseTag::IIIa | CaseTag::IV => WeightPoly::monomial(k, k),
        }
    }

    /// Marriage edges implied by the ordered member lists.
    pub fn marriage_edges(&self) -> Vec<(u32, u32)> {
        match self.tag {
            CaseTag::I | CaseTag::Ia => Vec::new(),
            // II, III, IIIa, IV all marry men[i] to women[i]
            CaseTag::II | CaseTag::III | CaseTag::IIIa | CaseTag::IV => {
                (0..self.k).map(|i| (self.men[i], self.women[i])).collect()
            }
            CaseTag::IIa => (0..self.k - 1)
                .map(|i| (self.men[i + 1], self.women[i]))
                .collect(),
        }
    }

    /// Affair edges implied by the ordered member lists.
    pub fn affair_edges(&self) -> Vec<(u32, u32)> {
        match self.tag {
            CaseTag::I | CaseTag::Ia => Vec::new(),
            CaseTag::II => (0..self.k - 1)
                .map(|i| (self.men[i + 1], self.women[i]))
                .collect(),
            CaseTag::IIa => (0..self.k).map(|i| (self.men[i], self.women[i])).collect(),
            CaseTag::III => (0..self.k)
                .map(|i| (self.men[i + 1], self.women[i]))
                .collect(),
            CaseTag::IIIa => (0..self.k)
                .map(|i| (self.men[i], self.women[i + 1]))
                .collect(),
            CaseTag::IV => (0..self.k)
                .map(|i| (self.men[(i + 1) % self.k], self.women[i]))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Man,
    Woman,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Color {
    Marriage,
    Affair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Person {
    side: Side,
    label: u32,
}

/// Partner lookup tables for one profile.
struct Adjacency {
    man_spouse: Vec<Option<u32>>,
    woman_spouse: Vec<Option<u32>>,
    man_lover: Vec<Option<u32>>,
    woman_lover: Vec<Option<u32>>,
}

impl Adjacency {
    fn new(profile: &Profile) -> Self {
        let mut adj = Self {
            man_spouse: vec![None; profile.m as usize + 1],
            woman_spouse: vec![None; profile.n as usize + 1],
            man_lover: vec![None; profile.m as usize + 1],
            woman_lover: vec![None; profile.n as usize + 1],
        };
        for &(man, woman) in &profile.marriages {
            adj.man_spouse[man as usize] = Some(woman);
            adj.woman_spouse[woman as usize] = Some(man);
        }
        for &(man, woman) in &profile.affairs {
            adj.man_lover[man as usize] = Some(woman);
            adj.woman_lover[woman as usize] = Some(man);
        }
        adj
    }

    fn partner(&self, p: Person, color: Color) -> Option<Person> {
        let (table_m, table_w) = match color {
            Color::Marriage => (&self.man_spouse, &self.woman_spouse),
            Color::Affair => (&self.man_lover, &self.woman_lover),
        };
        match p.side {
            Side::Man => table_m[p.label as usize].map(|label| Person {
                side: Side::Woman,
                label,
            }),
            Side::Woman => table_w[p.label as usize].map(|label| Person {
                side: Side::Man,
                label,
            }),
        }
    }

    fn degree(&self, p: Person) -> usize {
        usize::from(self.partner(p, Color::Marriage).is_some())
            + usize::from(self.partner(p, Color::Affair).is_some())
    }
}

/// Walked component: vertices in order plus the colors of the edges
/// between consecutive vertices (colors alternate by construction).
struct Walk {
    vertices: Vec<Person>,
    colors: Vec<Color>,
}

impl Walk {
    fn reverse(&mut self) {
        self.vertices.reverse();
        self.colors.reverse();
    }

    fn count(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    fn into_component(self, tag: CaseTag, k: usize) -> Component {
        let men = self
            .vertices
            .iter()
            .filter(|p| p.side == Side::Man)
            .map(|p| p.label)
            .collect();
        let women = self
            .vertices
            .iter()
            .filter(|p| p.side == Side::Woman)
            .map(|p| p.label)
            .collect();
        Component { tag, k, men, women }
    }
}

/// Split a profile into its connected components and classify each one.
///
/// Paths are unrolled first, starting from vertices of degree at most one;
/// the remaining vertices all lie on alternating cycles. Path orientation
/// is normalized (man endpoint first for the mixed cases `II`/`IIa`,
/// married endpoint first for `III`/`IIIa`; cycles start at their smallest
/// man label and follow his marriage) so the output is deterministic.
pub fn decompose(profile: &Profile) -> Vec<Component> {
    let adj = Adjacency::new(profile);
    let mut man_seen = vec![false; profile.m as usize + 1];
    let mut woman_seen = vec![false; profile.n as usize + 1];
    let mut components = Vec::new();

    let everyone = (1..=profile.m)
        .map(|label| Person {
            side: Side::Man,
            label,
        })
        .chain((1..=profile.n).map(|label| Person {
            side: Side::Woman,
            label,
        }));

    // paths (and isolated people) first
    for start in everyone.clone() {
        if seen(&man_seen, &woman_seen, start) || adj.degree(start) > 1 {
            continue;
        }
        let walk = walk_from(&adj, start, &mut man_seen, &mut woman_seen);
        components.push(classify_path(walk));
    }

    // everything still unseen has degree two and sits on an alternating
    // cycle; every such cycle contains a man, so entering from the
    // smallest unseen man covers them all
    for label in 1..=profile.m {
        let start = Person {
            side: Side::Man,
            label,
        };
        if seen(&man_seen, &woman_seen, start) {
            continue;
        }
        debug_assert_eq!(adj.degree(start), 2);
        let walk = walk_cycle(&adj, start, &mut man_seen, &mut woman_seen);
        let k = walk.count(Color::Marriage);
        components.push(walk.into_component(CaseTag::IV, k));
    }
    debug_assert!((1..=profile.n).all(|w| woman_seen[w as usize]));

    components
}

fn seen(man_seen: &[bool], woman_seen: &[bool], p: Person) -> bool {
    match p.side {
        Side::Man => man_seen[p.label as usize],
        Side::Woman => woman_seen[p.label as usize],
    }
}

fn mark(man_seen: &mut [bool], woman_seen: &mut [bool], p: Person) {
    match p.side {
        Side::Man => man_seen[p.label as usize] = true,
        Side::Woman => woman_seen[p.label as usize] = true,
    }
}

/// Walk a path from an endpoint, alternating edge colors until stuck.
fn walk_from(
    adj: &Adjacency,
    start: Person,
    man_seen: &mut [bool],
    woman_seen: &mut [bool],
) -> Walk {
    let mut walk = Walk {
        vertices: vec![start],
        colors: Vec::new(),
    };
    mark(man_seen, woman_seen, start);
    let mut current = start;
    let mut next_color = if adj.partner(start, Color::Marriage).is_some() {
        Some(Color::Marriage)
    } else if adj.partner(start, Color::Affair).is_some() {
        Some(Color::Affair)
    } else {
        None
    };
    while let Some(color) = next_color {
        let partner = adj
            .partner(current, color)
            .expect("walk follows existing edges");
        walk.vertices.push(partner);
        walk.colors.push(color);
        mark(man_seen, woman_seen, partner);
        current = partner;
        let other = match color {
            Color::Marriage => Color::Affair,
            Color::Affair => Color::Marriage,
        };
        next_color = adj.partner(current, other).is_some().then_some(other);
    }
    walk
}

/// Walk the cycle through `start` (a man with both a spouse and a lover),
/// entering along his marriage edge.
fn walk_cycle(
    adj: &Adjacency,
    start: Person,
    man_seen: &mut [bool],
    woman_seen: &mut [bool],
) -> Walk {
    let mut walk = Walk {
        vertices: vec![start],
        colors: Vec::new(),
    };
    mark(man_seen, woman_seen, start);
    let mut current = start;
    let mut color = Color::Marriage;
    loop {
        let partner = adj
            .partner(current, color)
            .expect("cycle vertices have both edges");
        walk.colors.push(color);
        if partner == start {
            break;
        }
        walk.vertices.push(partner);
        mark(man_seen, woman_seen, partner);
        current = partner;
        color = match color {
            Color::Marriage => Color::Affair,
            Color::Affair => Color::Marriage,
        };
    }
    walk
}

fn classify_path(mut walk: Walk) -> Component {
    if walk.colors.is_empty() {
        let lone = walk.vertices[0];
        let tag = match lone.side {
            Side::Man => CaseTag::I,
            Side::Woman => CaseTag::Ia,
        };
        return walk.into_component(tag, 0);
    }

    let first = *walk.vertices.first().unwrap();
    let last = *walk.vertices.last().unwrap();
    let marriages = walk.count(Color::Marriage);
    let affairs = walk.count(Color::Affair);

    match (first.side, last.side) {
        (Side::Man, Side::Woman) | (Side::Woman, Side::Man) => {
            // mixed endpoints: orient from the man's end; the color counts
            // differ by one and the majority color names the case
            if first.side == Side::Woman {
                walk.reverse();
            }
            if marriages > affairs {
                walk.into_component(CaseTag::II, marriages)
            } else {
                walk.into_component(CaseTag::IIa, affairs)
            }
        }
        (Side::Man, Side::Man) => {
            // both endpoints men: orient from the married one
            if walk.colors[0] == Color::Affair {
                walk.reverse();
            }
            walk.into_component(CaseTag::III, marriages)
        }
        (Side::Woman, Side::Woman) => {
            if walk.colors[0] == Color::Affair {
                walk.reverse();
            }
            walk.into_component(CaseTag::IIIa, marriages)
        }
    }
}

/// The closed-form series of one component case, truncated to the given
/// bounds. All of the path and cycle cases are geometric in the doubled
/// edge `x*y*t*s`:
///
/// - `I`: `t`, `Ia`: `s`
/// - `II`: `x*t*s / (1 - x*y*t*s)`, `IIa`: `y*t*s / (1 - x*y*t*s)`
/// - `III`: `x*y*t^2*s / (1 - x*y*t*s)`, `IIIa`: `x*y*t*s^2 / (1 - x*y*t*s)`
/// - `IV`: `-log(1 - x*y*t*s)` (cycles of `k` couples admit `k!^2 / k`
///   labellings)
pub fn case_series(tag: CaseTag, max_m: usize, max_n: usize) -> BiSeries {
    let doubled_edge = BiSeries::from_terms(
        max_m,
        max_n,
        [(1, 1, &WeightPoly::var_x() * &WeightPoly::var_y())],
    );
    let geometric = || {
        doubled_edge
            .inv_one_minus()
            .expect("doubled edge has no constant term")
    };
    let xy = &WeightPoly::var_x() * &WeightPoly::var_y();
    let series = match tag {
        CaseTag::I => BiSeries::from_terms(max_m, max_n, [(1, 0, WeightPoly::one())]),
        CaseTag::Ia => BiSeries::from_terms(max_m, max_n, [(0, 1, WeightPoly::one())]),
        CaseTag::II => {
            &BiSeries::monomial_ordinary(max_m, max_n, 1, 1, WeightPoly::var_x()) * &geometric()
        }
        CaseTag::IIa => {
            &BiSeries::monomial_ordinary(max_m, max_n, 1, 1, WeightPoly::var_y()) * &geometric()
        }
        CaseTag::III => &BiSeries::monomial_ordinary(max_m, max_n, 2, 1, xy) * &geometric(),
        CaseTag::IIIa => &BiSeries::monomial_ordinary(max_m, max_n, 1, 2, xy) * &geometric(),
        CaseTag::IV => doubled_edge
            .log_inv_one_minus()
            .expect("doubled edge has no constant term"),
    };
    assert!(
        series.is_integral(),
        "case {tag} series must have integer labelled coefficients"
    );
    series
}

/// The sum of all seven case series: the generating function of a single
/// connected component of any shape.
pub fn all_components_series(max_m: usize, max_n: usize) -> BiSeries {
    CaseTag::ALL
        .into_iter()
        .map(|tag| case_series(tag, max_m, max_n))
        .fold(BiSeries::zero(max_m, max_n), |acc, s| &acc + &s)
}
