//! Height-two gluing rules: attaching a `P(1,1,2)` or `P(2,1,1)` block to a
//! pure height-two poset, and the generator built on them.

use crate::error::{Error, Result};
use crate::poset::Poset;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleTag {
    A1,
    A2,
    B,
    C,
    D1,
    D2,
    E1,
    E2,
    F,
    G1,
    G2,
    H,
}

/// How `a1` or `a2` is placed relative to `y` or `z`, and to `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slot {
    Fresh,
    /// Identified; relatedness to `x` unconstrained (`x` is fresh).
    Glued,
    GluedRelated,
    GluedUnrelated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingRule {
    pub tag: RuleTag,
    pub c_glued: bool,
    pub a1: Slot,
    pub a2: Slot,
    pub delta: u8,
}

impl RuleTag {
    pub const ALL: [RuleTag; 12] = [
        RuleTag::A1,
        RuleTag::A2,
        RuleTag::B,
        RuleTag::C,
        RuleTag::D1,
        RuleTag::D2,
        RuleTag::E1,
        RuleTag::E2,
        RuleTag::F,
        RuleTag::G1,
        RuleTag::G2,
        RuleTag::H,
    ];

    /// The rules that leave the index unchanged.
    pub const FROBENIUS: [RuleTag; 6] =
        [RuleTag::A1, RuleTag::A2, RuleTag::C, RuleTag::D1, RuleTag::D2, RuleTag::F];

    pub fn name(self) -> &'static str {
        match self {
            RuleTag::A1 => "A1",
            RuleTag::A2 => "A2",
            RuleTag::B => "B",
            RuleTag::C => "C",
            RuleTag::D1 => "D1",
            RuleTag::D2 => "D2",
            RuleTag::E1 => "E1",
            RuleTag::E2 => "E2",
            RuleTag::F => "F",
            RuleTag::G1 => "G1",
            RuleTag::G2 => "G2",
            RuleTag::H => "H",
        }
    }

    pub fn parse(s: &str) -> Option<RuleTag> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }

    pub fn rule(self) -> GluingRule {
        use Slot::*;
        let (c_glued, a1, a2, delta) = match self {
            RuleTag::A1 => (false, Glued, Fresh, 0),
            RuleTag::A2 => (false, Fresh, Glued, 0),
            RuleTag::B => (false, Glued, Glued, 1),
            RuleTag::C => (true, Fresh, Fresh, 0),
            RuleTag::D1 => (true, GluedRelated, Fresh, 0),
            RuleTag::D2 => (true, Fresh, GluedRelated, 0),
            RuleTag::E1 => (true, GluedUnrelated, Fresh, 1),
            RuleTag::E2 => (true, Fresh, GluedUnrelated, 1),
            RuleTag::F => (true, GluedRelated, GluedRelated, 0),
            RuleTag::G1 => (true, GluedRelated, GluedUnrelated, 1),
            RuleTag::G2 => (true, GluedUnrelated, GluedRelated, 1),
            RuleTag::H => (true, GluedUnrelated, GluedUnrelated, 2),
        };
        GluingRule { tag: self, c_glued, a1, a2, delta }
    }

    pub fn raises_index(self) -> bool {
        self.rule().delta > 0
    }
}

impl std::fmt::Display for RuleTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// `P112`: `c ≺ b ≺ a1, a2`. `P211`: `a1, a2 ≺ b ≺ c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Block {
    P112,
    P211,
}

impl Block {
    pub fn poset(self) -> Poset {
        match self {
            Block::P112 => Poset::complete(&[1, 1, 2]).unwrap(),
            Block::P211 => Poset::complete(&[2, 1, 1]).unwrap(),
        }
    }

    /// Indices of `c, b, a1, a2` in `self.poset()`.
    pub fn roles(self) -> [usize; 4] {
        match self {
            Block::P112 => [0, 1, 2, 3],
            Block::P211 => [3, 2, 0, 1],
        }
    }
}

/// Elements of `Q` (0-based) identified with `c`, `a1`, `a2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Attachment {
    pub x: Option<usize>,
    pub y: Option<usize>,
    pub z: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct RuleApplication {
    pub poset: Poset,
    pub delta: u8,
    /// Labels of `Q`'s elements in the result.
    pub q_map: Vec<usize>,
    /// Labels of `c, b, a1, a2` in the result.
    pub block_map: [usize; 4],
}

fn rule_err(rule: &str, reason: impl Into<String>) -> Error {
    Error::Rule { rule: rule.to_string(), reason: reason.into() }
}

fn check_host(q: &Poset) -> Result<()> {
    if q.height() != 2 || !q.is_pure() || !q.is_connected() {
        return Err(rule_err("-", "host must be a connected, pure, height-two poset"));
    }
    Ok(())
}

/// The unique rule describing an attachment, after validating it against
/// the host. `None` when nothing is identified.
pub fn classify(q: &Poset, block: Block, att: &Attachment) -> Result<Option<RuleTag>> {
    let n = q.size();
    let c_side_min = block == Block::P112;
    for (name, v, want_min) in [
        ("x", att.x, c_side_min),
        ("y", att.y, !c_side_min),
        ("z", att.z, !c_side_min),
    ] {
        if let Some(v) = v {
            if v >= n {
                return Err(Error::OutOfRange { label: v as i64 + 1, n });
            }
            let ok = if want_min { q.is_minimal(v) } else { q.is_maximal(v) };
            if !ok {
                let kind = if want_min { "minimal" } else { "maximal" };
                return Err(rule_err("-", format!("{name} = {} must be {kind} in Q", v + 1)));
            }
        }
    }
    if att.y.is_some() && att.y == att.z {
        return Err(rule_err("-", "y and z must be distinct"));
    }
    let slot = |v: Option<usize>| match (v, att.x) {
        (None, _) => Slot::Fresh,
        (Some(_), None) => Slot::Glued,
        (Some(v), Some(x)) if q.related(v, x) => Slot::GluedRelated,
        (Some(_), Some(_)) => Slot::GluedUnrelated,
    };
    let (a1, a2) = (slot(att.y), slot(att.z));
    let c_glued = att.x.is_some();
    Ok(RuleTag::ALL.into_iter().find(|t| {
        let r = t.rule();
        r.c_glued == c_glued && r.a1 == a1 && r.a2 == a2
    }))
}

fn describe(r: &GluingRule) -> String {
    let s = |slot: Slot, a: &str, y: &str| match slot {
        Slot::Fresh => format!("{a} ≠ {y}"),
        Slot::Glued => format!("{a} = {y}"),
        Slot::GluedRelated => format!("{a} = {y}, {y} ∼ x"),
        Slot::GluedUnrelated => format!("{a} = {y}, {y} ≁ x"),
    };
    format!(
        "{}; {}; {}",
        if r.c_glued { "c = x" } else { "c ≠ x" },
        s(r.a1, "a1", "y"),
        s(r.a2, "a2", "z")
    )
}

/// Glues `block` onto `q` as prescribed by `rule`.
pub fn apply_rule(
    q: &Poset,
    block: Block,
    rule: RuleTag,
    att: &Attachment,
) -> Result<RuleApplication> {
    check_host(q)?;
    let found = classify(q, block, att).map_err(|e| match e {
        Error::Rule { reason, .. } => rule_err(rule.name(), reason),
        e => e,
    })?;
    if found != Some(rule) {
        let got = found.map_or("no identification".to_string(), |t| describe(&t.rule()));
        return Err(rule_err(
            rule.name(),
            format!("pattern requires {}, attachment gives {got}", describe(&rule.rule())),
        ));
    }
    let s = block.poset();
    let [c, b, a1, a2] = block.roles();
    let mut pairs = vec![];
    for (v, role) in [(att.x, c), (att.y, a1), (att.z, a2)] {
        if let Some(v) = v {
            pairs.push((v, role));
        }
    }
    let g = q.glue(&s, &pairs)?;
    Ok(RuleApplication {
        block_map: [g.right[c], g.right[b], g.right[a1], g.right[a2]],
        q_map: g.left,
        poset: g.poset,
        delta: rule.rule().delta,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub block: Block,
    pub rule: RuleTag,
    /// In the labels of the poset built so far.
    pub attachment: Attachment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub start: Block,
    pub steps: Vec<TraceStep>,
}

/// Result of replaying a trace: the poset and, for every block in order,
/// the final labels of its `c, b, a1, a2`.
#[derive(Clone, Debug)]
pub struct Replay {
    pub poset: Poset,
    pub blocks: Vec<[usize; 4]>,
}

pub fn replay(trace: &Trace) -> Result<Replay> {
    let mut poset = trace.start.poset();
    let mut blocks = vec![trace.start.roles()];
    for st in &trace.steps {
        let app = apply_rule(&poset, st.block, st.rule, &st.attachment)?;
        for b in blocks.iter_mut() {
            for v in b.iter_mut() {
                *v = app.q_map[*v];
            }
        }
        blocks.push(app.block_map);
        poset = app.poset;
    }
    Ok(Replay { poset, blocks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenerateMode {
    /// Only index-preserving rules allowed.
    Frobenius,
    Exploratory,
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub poset: Poset,
    pub trace: Trace,
    /// Sum of the rule deltas along the trace.
    pub delta: u32,
}

/// Every attachment of `block` onto `q` that identifies at least one element,
/// with its rule.
pub fn attachments(q: &Poset, block: Block) -> Vec<(Attachment, RuleTag)> {
    let (xs, ys) = match block {
        Block::P112 => (q.minimal(), q.maximal()),
        Block::P211 => (q.maximal(), q.minimal()),
    };
    let opt = |v: &[usize]| -> Vec<Option<usize>> {
        std::iter::once(None).chain(v.iter().map(|&e| Some(e))).collect()
    };
    let mut out = vec![];
    for x in opt(&xs) {
        for y in opt(&ys) {
            for z in opt(&ys) {
                let att = Attachment { x, y, z };
                if let Ok(Some(t)) = classify(q, block, &att) {
                    out.push((att, t));
                }
            }
        }
    }
    out
}

/// All posets built from at most `blocks` blocks with the given rules, up to
/// isomorphism, in order of block count and discovery.
pub fn generate_pure_frobenius(
    blocks: usize,
    rules: &[RuleTag],
    mode: GenerateMode,
) -> Result<Vec<Generated>> {
    if mode == GenerateMode::Frobenius {
        if let Some(t) = rules.iter().find(|t| t.raises_index()) {
            return Err(Error::IndexRaisingRule(t.name().to_string()));
        }
    }
    let mut seen = HashSet::new();
    let mut out: Vec<Generated> = vec![];
    if blocks == 0 {
        return Ok(out);
    }
    let mut level = vec![];
    for b in [Block::P112, Block::P211] {
        let g = Generated {
            poset: b.poset(),
            trace: Trace { start: b, steps: vec![] },
            delta: 0,
        };
        if seen.insert(g.poset.canonical_key()) {
            level.push(g);
        }
    }
    for _ in 1..blocks {
        let mut next = vec![];
        for g in &level {
            for block in [Block::P112, Block::P211] {
                for (att, tag) in attachments(&g.poset, block) {
                    if !rules.contains(&tag) {
                        continue;
                    }
                    let app = apply_rule(&g.poset, block, tag, &att)?;
                    if !seen.insert(app.poset.canonical_key()) {
                        continue;
                    }
                    let mut trace = g.trace.clone();
                    trace.steps.push(TraceStep { block, rule: tag, attachment: att });
                    next.push(Generated {
                        poset: app.poset,
                        trace,
                        delta: g.delta + app.delta as u32,
                    });
                }
            }
        }
        out.append(&mut level);
        level = next;
    }
    out.append(&mut level);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::formula_index;

    fn p112() -> Poset {
        Block::P112.poset()
    }

    #[test]
    fn deltas_match_table() {
        let zero = ["A1", "A2", "C", "D1", "D2", "F"];
        for t in RuleTag::ALL {
            let want = if zero.contains(&t.name()) {
                0
            } else if t == RuleTag::H {
                2
            } else {
                1
            };
            assert_eq!(t.rule().delta, want, "{t}");
            assert_eq!(RuleTag::parse(t.name()), Some(t));
        }
    }

    #[test]
    fn rule_a1_gives_seven_elements() {
        let g = generate_pure_frobenius(2, &[RuleTag::A1], GenerateMode::Frobenius).unwrap();
        let two: Vec<_> = g.iter().filter(|g| g.trace.steps.len() == 1).collect();
        // P112 host with a P211 hung from a maximum, and the dual
        assert!(two.iter().all(|g| g.poset.size() == 7));
        let fig = Poset::from_cover_relations(
            7,
            &[(1, 2), (2, 3), (2, 4), (5, 6), (6, 4), (6, 7)],
        )
        .unwrap();
        assert!(two.iter().any(|g| g.poset.is_isomorphic(&fig)));
    }

    #[test]
    fn rule_h_adds_two() {
        // hang a P211 from the minimum of P112; its fresh minimum is below
        // neither original maximum
        let q = p112();
        let att = Attachment { x: None, y: Some(0), z: None };
        let host = apply_rule(&q, Block::P211, RuleTag::A1, &att).unwrap();
        let x = host.block_map[3];
        let (y, z) = (host.q_map[2], host.q_map[3]);
        let host = host.poset;
        let att = Attachment { x: Some(x), y: Some(y), z: Some(z) };
        assert_eq!(classify(&host, Block::P112, &att), Ok(Some(RuleTag::H)));
        let app = apply_rule(&host, Block::P112, RuleTag::H, &att).unwrap();
        let before = formula_index(&host).unwrap();
        assert_eq!(formula_index(&app.poset).unwrap() - before, 2);
        assert!(apply_rule(&host, Block::P112, RuleTag::F, &att).is_err());
    }

    #[test]
    fn mismatched_pattern_is_rejected() {
        let q = p112();
        let att = Attachment { x: Some(0), y: None, z: None };
        let e = apply_rule(&q, Block::P112, RuleTag::A1, &att).unwrap_err();
        assert!(matches!(e, Error::Rule { .. }));
        let bad = Attachment { x: Some(2), y: None, z: None };
        assert!(apply_rule(&q, Block::P112, RuleTag::C, &bad).is_err());
    }

    #[test]
    fn frobenius_mode_rejects_raising_rules() {
        assert_eq!(
            generate_pure_frobenius(2, &[RuleTag::B], GenerateMode::Frobenius).unwrap_err(),
            Error::IndexRaisingRule("B".into())
        );
        let g = generate_pure_frobenius(2, &[RuleTag::B], GenerateMode::Exploratory).unwrap();
        assert!(g.iter().filter(|g| !g.trace.steps.is_empty()).all(|g| formula_index(&g.poset) == Ok(1)));
    }

    #[test]
    fn single_blocks() {
        let g = generate_pure_frobenius(1, &RuleTag::FROBENIUS, GenerateMode::Frobenius).unwrap();
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn replay_tracks_blocks() {
        let g = generate_pure_frobenius(3, &RuleTag::FROBENIUS, GenerateMode::Frobenius).unwrap();
        for x in &g {
            let r = replay(&x.trace).unwrap();
            assert_eq!(r.poset, x.poset);
            assert_eq!(r.blocks.len(), x.trace.steps.len() + 1);
            for [c, b, a1, a2] in &r.blocks {
                let p = &r.poset;
                assert!(p.covers_rel(*c, *b) || p.covers_rel(*b, *c));
                assert!(p.related(*b, *a1) && p.related(*b, *a2));
            }
            assert_eq!(formula_index(&x.poset), Ok(0));
        }
    }
}
