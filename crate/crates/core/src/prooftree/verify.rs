use std::collections::BTreeMap;
use std::fmt;

use crate::boxes::Boxcode;
use crate::conditions::{BoxContext, Mode, TerminalCondition};
use crate::pairs::RelatorTable;
use crate::par;

use super::{children, Node, ProofTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyStatus {
    Pass,
    PassWithHoles,
    Fail,
}

impl fmt::Display for VerifyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyStatus::Pass => "pass",
            VerifyStatus::PassWithHoles => "pass-with-holes",
            VerifyStatus::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub boxcode: Boxcode,
    pub condition: TerminalCondition,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub status: VerifyStatus,
    pub leaf_count: u64,
    pub hole_count: u64,
    pub tallies: BTreeMap<&'static str, u64>,
    /// In preorder of the tree.
    pub failures: Vec<Failure>,
    pub necklace_glen: Option<(usize, usize)>,
}

impl VerifyReport {
    fn empty() -> VerifyReport {
        VerifyReport {
            status: VerifyStatus::Pass,
            leaf_count: 0,
            hole_count: 0,
            tallies: BTreeMap::new(),
            failures: Vec::new(),
            necklace_glen: None,
        }
    }

    /// Combines reports of consecutive subtrees (`self` first).
    pub fn merge(mut self, other: VerifyReport) -> VerifyReport {
        self.leaf_count += other.leaf_count;
        self.hole_count += other.hole_count;
        for (k, v) in other.tallies {
            *self.tallies.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
        self.necklace_glen = match (self.necklace_glen, other.necklace_glen) {
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
            (x, None) | (None, x) => x,
        };
        self.status = if !self.failures.is_empty() {
            VerifyStatus::Fail
        } else if self.hole_count > 0 {
            VerifyStatus::PassWithHoles
        } else {
            VerifyStatus::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.status != VerifyStatus::Fail
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status: {}", self.status)?;
        writeln!(f, "leaves: {}", self.leaf_count)?;
        writeln!(f, "holes: {}", self.hole_count)?;
        for (k, v) in &self.tallies {
            writeln!(f, "{k}: {v}")?;
        }
        if let Some((lo, hi)) = self.necklace_glen {
            writeln!(f, "necklace g-length: {lo}..{hi}")?;
        }
        for fl in &self.failures {
            let code = if fl.boxcode.depth() == 0 { "(root)".to_string() } else { fl.boxcode.to_string() };
            writeln!(f, "FAIL {code} {}: {}", fl.condition, fl.reason)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions<'a> {
    pub mode: Mode,
    pub allow_holes: bool,
    /// Variety pairs must appear in this table when set.
    pub whitelist: Option<&'a RelatorTable>,
    pub parallel: bool,
}

impl VerifyOptions<'static> {
    pub fn main() -> VerifyOptions<'static> {
        VerifyOptions { mode: Mode::MAIN, allow_holes: false, whitelist: None, parallel: true }
    }

    pub fn identify() -> VerifyOptions<'static> {
        VerifyOptions {
            mode: Mode::IDENTIFY,
            allow_holes: false,
            whitelist: Some(RelatorTable::bundled()),
            parallel: true,
        }
    }
}

/// Checks every leaf of `tree` over its box, descending from `root`.
pub fn verify_tree(tree: &ProofTree, root: &Boxcode, opts: &VerifyOptions) -> VerifyReport {
    let height = tree.node.height();
    if root.depth() + height > crate::boxes::MAX_DEPTH {
        let mut r = VerifyReport::empty();
        r.failures.push(Failure {
            boxcode: root.clone(),
            condition: TerminalCondition::Hole,
            reason: format!("tree of height {height} exceeds the depth limit below this root"),
        });
        r.status = VerifyStatus::Fail;
        return r;
    }
    verify_node(&tree.node, root.clone(), opts)
}

fn verify_node(node: &Node, code: Boxcode, opts: &VerifyOptions) -> VerifyReport {
    match node {
        Node::Leaf(cond) => verify_leaf(cond, code, opts),
        Node::Split(a, b) => {
            let (lo, hi) = children(&code);
            let (ra, rb) = par::join(
                opts.parallel,
                || verify_node(a, lo, opts),
                || verify_node(b, hi, opts),
            );
            ra.merge(rb)
        }
    }
}

fn verify_leaf(cond: &TerminalCondition, code: Boxcode, opts: &VerifyOptions) -> VerifyReport {
    let mut r = VerifyReport::empty();
    r.leaf_count = 1;
    *r.tallies.entry(cond.kind()).or_default() += 1;
    let fail = |r: &mut VerifyReport, code: Boxcode, reason: String| {
        r.failures.push(Failure { boxcode: code, condition: cond.clone(), reason });
        r.status = VerifyStatus::Fail;
    };

    if let TerminalCondition::Hole = cond {
        r.hole_count = 1;
        if opts.allow_holes {
            r.status = VerifyStatus::PassWithHoles;
        } else {
            fail(&mut r, code, "hole not allowed".into());
        }
        return r;
    }
    if let (TerminalCondition::Variety(r1, r2), Some(table)) = (cond, opts.whitelist) {
        if !table.contains(r1, r2) {
            fail(&mut r, code, format!("pair ({r1}, {r2}) not in relator whitelist"));
            return r;
        }
    }
    let ctx = BoxContext::new(code.to_box());
    let res = ctx.certify(cond, &opts.mode);
    if res.is_certified() {
        if let TerminalCondition::Necklace(w) = cond {
            let g = w.g_length();
            r.necklace_glen = Some((g, g));
        }
    } else {
        fail(&mut r, code, res.witness);
    }
    r
}
