//! Claim manifests: one `SPEC :: CLAIM :: CITATION` row per line, with `#`
//! comment lines.

use std::fmt;

use ringcover::cover::Sigma;
use ringcover::dsl::{canonical_print, eval, parse, RingExpr};
use ringcover::ideal::{decompose, jacobson_radical, local_data, minimal_ideals, transporter, Side};
use ringcover::sn::{classify_sigma_witness, in_sn, local_coverability_criterion};
use ringcover::subring::{coset_representatives, is_maximal, subring_closure};
use ringcover::{is_isomorphic, verify_good_tuple, ElementSet, RingTable};
use thiserror::Error;

use crate::engine::Engine;

/// The claims checked by `verify-paper` when no manifest is given.
pub const DEFAULT_MANIFEST: &str = include_str!("../manifest/default.manifest");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexLabel {
    /// `[R : S]`, `S` the intersection of the cover
    RingOverIntersection,
    /// `[R : S_i]` for every member
    RingOverMember,
    /// `[S_i : S]` for every member
    MemberOverIntersection,
    /// `[S_i ∩ S_j : S]` for every pair `i != j`
    PairOverIntersection,
    /// `[S : I(r)]` for both transporters of every nontrivial coset of `S`
    IntersectionOverTransporter,
}

impl IndexLabel {
    const ALL: [(IndexLabel, &'static str); 5] = [
        (IndexLabel::RingOverIntersection, "R:S"),
        (IndexLabel::RingOverMember, "R:Si"),
        (IndexLabel::MemberOverIntersection, "Si:S"),
        (IndexLabel::PairOverIntersection, "SiSj:S"),
        (IndexLabel::IntersectionOverTransporter, "S:I(r)"),
    ];

    fn name(self) -> &'static str {
        Self::ALL.iter().find(|(l, _)| *l == self).unwrap().1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    SigmaEquals(usize),
    NotCoverable,
    InS(usize),
    NotInS(usize),
    MaximalCount(usize),
    /// Number of maximal subrings that contain 1.
    UnitalMaximalCount(usize),
    IndexEquals(IndexLabel, usize),
    IsomorphicTo(RingExpr),
    NotIsomorphicTo(RingExpr),
    RadicalOrder(usize),
    MinimalIdealCount(usize),
    Local,
    Nonlocal,
    Indecomposable,
    /// The listed elements generate the ring as a subring.
    GeneratedBy(Vec<Vec<u64>>),
    /// The subring generated by the listed elements is maximal.
    MaximalSubring(Vec<Vec<u64>>),
    /// The local-ring criterion predicts this value and direct search agrees.
    Predicted(Sigma),
    /// The covering-number witness chain ends in a ring isomorphic to this.
    WitnessQuotient(RingExpr),
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vecs = |v: &Vec<Vec<u64>>| serde_json::to_string(v).unwrap();
        match self {
            Claim::SigmaEquals(n) => write!(f, "sigma = {n}"),
            Claim::NotCoverable => f.write_str("not-coverable"),
            Claim::InS(n) => write!(f, "in S({n})"),
            Claim::NotInS(n) => write!(f, "not-in S({n})"),
            Claim::MaximalCount(k) => write!(f, "maximal-count = {k}"),
            Claim::UnitalMaximalCount(k) => write!(f, "unital-maximal-count = {k}"),
            Claim::IndexEquals(l, k) => write!(f, "index {} = {k}", l.name()),
            Claim::IsomorphicTo(e) => write!(f, "iso {}", canonical_print(e)),
            Claim::NotIsomorphicTo(e) => write!(f, "not-iso {}", canonical_print(e)),
            Claim::RadicalOrder(k) => write!(f, "radical-order = {k}"),
            Claim::MinimalIdealCount(k) => write!(f, "minimal-ideal-count = {k}"),
            Claim::Local => f.write_str("local"),
            Claim::Nonlocal => f.write_str("nonlocal"),
            Claim::Indecomposable => f.write_str("indecomposable"),
            Claim::GeneratedBy(v) => write!(f, "generated-by {}", vecs(v)),
            Claim::MaximalSubring(v) => write!(f, "maximal-subring {}", vecs(v)),
            Claim::Predicted(Sigma::Finite(n)) => write!(f, "predicted sigma = {n}"),
            Claim::Predicted(Sigma::NotCoverable) => f.write_str("predicted not-coverable"),
            Claim::WitnessQuotient(e) => write!(f, "witness-quotient iso {}", canonical_print(e)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("manifest line {line}: {msg}")]
pub struct ManifestError {
    pub line: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub spec: RingExpr,
    pub claim: Claim,
    pub citation: String,
}

fn number(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("expected a number, found '{}'", s.trim()))
}

fn after_eq<'a>(s: &'a str, key: &str) -> Option<&'a str> {
    s.strip_prefix(key)?.trim_start().strip_prefix('=')
}

fn s_of(s: &str, key: &str) -> Option<Result<usize, String>> {
    let inner = s.strip_prefix(key)?.trim().strip_prefix("S(")?.strip_suffix(')')?;
    Some(number(inner))
}

fn expr(s: &str) -> Result<RingExpr, String> {
    parse(s.trim()).map_err(|e| e.to_string())
}

fn vectors(s: &str) -> Result<Vec<Vec<u64>>, String> {
    serde_json::from_str(s.trim()).map_err(|_| format!("expected coordinate vectors, found '{}'", s.trim()))
}

pub fn parse_claim(text: &str) -> Result<Claim, String> {
    let s = text.trim();
    if let Some(r) = after_eq(s, "sigma") {
        return Ok(Claim::SigmaEquals(number(r)?));
    }
    if let Some(r) = s_of(s, "not-in") {
        return Ok(Claim::NotInS(r?));
    }
    if let Some(r) = s_of(s, "in") {
        return Ok(Claim::InS(r?));
    }
    if let Some(r) = after_eq(s, "unital-maximal-count") {
        return Ok(Claim::UnitalMaximalCount(number(r)?));
    }
    if let Some(r) = after_eq(s, "maximal-count") {
        return Ok(Claim::MaximalCount(number(r)?));
    }
    if let Some(r) = after_eq(s, "radical-order") {
        return Ok(Claim::RadicalOrder(number(r)?));
    }
    if let Some(r) = after_eq(s, "minimal-ideal-count") {
        return Ok(Claim::MinimalIdealCount(number(r)?));
    }
    if let Some(r) = s.strip_prefix("index ") {
        let (label, k) = r.split_once('=').ok_or("index claim needs '= K'")?;
        let label = IndexLabel::ALL
            .iter()
            .find(|(_, n)| *n == label.trim())
            .ok_or_else(|| format!("unknown index label '{}'", label.trim()))?
            .0;
        return Ok(Claim::IndexEquals(label, number(k)?));
    }
    if let Some(r) = s.strip_prefix("not-iso ") {
        return Ok(Claim::NotIsomorphicTo(expr(r)?));
    }
    if let Some(r) = s.strip_prefix("iso ") {
        return Ok(Claim::IsomorphicTo(expr(r)?));
    }
    if let Some(r) = s.strip_prefix("witness-quotient iso ") {
        return Ok(Claim::WitnessQuotient(expr(r)?));
    }
    if let Some(r) = s.strip_prefix("generated-by ") {
        return Ok(Claim::GeneratedBy(vectors(r)?));
    }
    if let Some(r) = s.strip_prefix("maximal-subring ") {
        return Ok(Claim::MaximalSubring(vectors(r)?));
    }
    if let Some(r) = s.strip_prefix("predicted ") {
        return match parse_claim(r)? {
            Claim::SigmaEquals(n) => Ok(Claim::Predicted(Sigma::Finite(n))),
            Claim::NotCoverable => Ok(Claim::Predicted(Sigma::NotCoverable)),
            _ => Err("predicted claims are 'sigma = N' or 'not-coverable'".into()),
        };
    }
    match s {
        "not-coverable" => Ok(Claim::NotCoverable),
        "local" => Ok(Claim::Local),
        "nonlocal" => Ok(Claim::Nonlocal),
        "indecomposable" => Ok(Claim::Indecomposable),
        _ => Err(format!("unknown claim '{s}'")),
    }
}

pub fn parse_manifest(text: &str) -> Result<Vec<Entry>, ManifestError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |msg: String| ManifestError { line, msg };
        let parts: Vec<&str> = trimmed.split("::").collect();
        if parts.len() != 3 {
            return Err(err("expected 'SPEC :: CLAIM :: CITATION'".into()));
        }
        let spec = parse(parts[0].trim()).map_err(|e| err(e.to_string()))?;
        let claim = parse_claim(parts[1]).map_err(err)?;
        out.push(Entry {
            line,
            spec,
            claim,
            citation: parts[2].trim().to_string(),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn elems(ring: &RingTable, coords: &[Vec<u64>]) -> ringcover::Result<ElementSet> {
    let mut set = ring.empty_set();
    for c in coords {
        if c.len() != ring.rank() {
            return Err(ringcover::RingError::MalformedCoords(format!(
                "{c:?} has {} coordinates, ring has {}",
                c.len(),
                ring.rank()
            )));
        }
        set.insert(ring.elem(c)?);
    }
    Ok(set)
}

fn all_equal(values: &[usize], k: usize) -> bool {
    !values.is_empty() && values.iter().all(|&v| v == k)
}

fn index_values(ring: &RingTable, witness: &[ElementSet], label: IndexLabel) -> ringcover::Result<Vec<usize>> {
    let report = verify_good_tuple(ring, witness)?;
    let s = &report.intersection;
    Ok(match label {
        IndexLabel::RingOverIntersection => vec![report.index],
        IndexLabel::RingOverMember => report.indexes,
        IndexLabel::MemberOverIntersection => report.indexes_over_intersection,
        IndexLabel::PairOverIntersection => {
            let mut v = Vec::new();
            for (i, a) in witness.iter().enumerate() {
                for b in &witness[i + 1..] {
                    v.push(a.intersection(b).len() / s.len());
                }
            }
            v
        }
        IndexLabel::IntersectionOverTransporter => coset_representatives(ring, s)
            .into_iter()
            .flat_map(|r| [Side::Left, Side::Right].map(|side| s.len() / transporter(ring, s, r, side).len()))
            .collect(),
    })
}

/// Evaluates one claim. Engine errors count as failures.
pub fn check(entry: &Entry, engine: &Engine) -> Outcome {
    match try_check(entry, engine) {
        Ok(o) => o,
        Err(e) => outcome(false, format!("error: {e}")),
    }
}

fn try_check(entry: &Entry, engine: &Engine) -> ringcover::Result<Outcome> {
    let ring = eval(&entry.spec)?;
    let lim = &engine.limits;
    Ok(match &entry.claim {
        Claim::SigmaEquals(n) => {
            let s = engine.sigma(&ring)?.sigma;
            outcome(s == Sigma::Finite(*n), format!("sigma = {s}"))
        }
        Claim::NotCoverable => {
            let s = engine.sigma(&ring)?.sigma;
            outcome(s == Sigma::NotCoverable, format!("sigma = {s}"))
        }
        Claim::InS(n) | Claim::NotInS(n) => {
            let v = in_sn(&ring, *n, lim)?;
            let want = matches!(entry.claim, Claim::InS(_));
            let mut detail = format!("member = {}, sigma = {}", v.member, v.sigma.sigma);
            if let Some(reason) = &v.failure_reason {
                detail.push_str(&format!(", reason: {reason:?}"));
            }
            outcome(v.member == want, detail)
        }
        Claim::MaximalCount(k) => {
            let m = engine.lattice(&ring)?.maximal_subrings().len();
            outcome(m == *k, format!("{m} maximal subrings"))
        }
        Claim::UnitalMaximalCount(k) => {
            let one = ring.one();
            let m = engine
                .lattice(&ring)?
                .maximal_subrings()
                .iter()
                .filter(|s| s.contains(one))
                .count();
            outcome(m == *k, format!("{m} maximal subrings contain 1"))
        }
        Claim::IndexEquals(label, k) => {
            let res = engine.sigma(&ring)?;
            if res.witness.is_empty() {
                return Ok(outcome(false, "ring is not coverable"));
            }
            let values = index_values(&ring, &res.witness, *label)?;
            outcome(all_equal(&values, *k), format!("indices {values:?}"))
        }
        Claim::IsomorphicTo(e) | Claim::NotIsomorphicTo(e) => {
            let iso = is_isomorphic(&ring, &eval(e)?)?;
            let want = matches!(entry.claim, Claim::IsomorphicTo(_));
            outcome(iso == want, format!("isomorphic = {iso}"))
        }
        Claim::RadicalOrder(k) => {
            let j = jacobson_radical(&ring).radical.len();
            outcome(j == *k, format!("radical order {j}"))
        }
        Claim::MinimalIdealCount(k) => {
            let m = minimal_ideals(&ring).len();
            outcome(m == *k, format!("{m} minimal ideals"))
        }
        Claim::Local | Claim::Nonlocal => {
            let local = local_data(&ring).is_local;
            outcome(local == matches!(entry.claim, Claim::Local), format!("local = {local}"))
        }
        Claim::Indecomposable => {
            let d = decompose(&ring)?;
            outcome(d.factors.len() == 1, format!("{} indecomposable factors", d.factors.len()))
        }
        Claim::GeneratedBy(gens) => {
            let c = subring_closure(&ring, &elems(&ring, gens)?);
            outcome(c.is_full(), format!("generated subring has order {}", c.len()))
        }
        Claim::MaximalSubring(gens) => {
            let c = subring_closure(&ring, &elems(&ring, gens)?);
            let m = is_maximal(&ring, &c);
            outcome(m, format!("generated subring has order {}, maximal = {m}", c.len()))
        }
        Claim::Predicted(want) => {
            let p = local_coverability_criterion(&ring)?;
            let direct = engine.sigma(&ring)?.sigma;
            outcome(
                p.sigma == *want && direct == *want,
                format!("predicted {}, direct {direct}", p.sigma),
            )
        }
        Claim::WitnessQuotient(e) => {
            let w = classify_sigma_witness(&ring, lim)?;
            let iso = is_isomorphic(&w.quotient, &eval(e)?)?;
            outcome(
                iso,
                format!("sigma = {}, quotient of order {}, isomorphic = {iso}", w.sigma, w.quotient.order()),
            )
        }
    })
}
