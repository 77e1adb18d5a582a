//! Embedded resolution of a plane curve germ by iterated point blowups.
//!
//! Every point still to be examined is described in a local chart in
//! which each exceptional divisor through it is a coordinate axis, so the
//! normal-crossing test reduces to reading off the strict transform's
//! multiplicity and linear part. The divisor ledger keeps, for every
//! exceptional curve `E`, the order `m` of the pulled-back curve and the
//! order `a` of the relative canonical divisor; the threshold is then
//! `min(1, (a + 1)/m)` over all of them.

mod export;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{factor_rational, int, BPoly, Mult, Rat, UPoly};
use crate::localinv::is_square_free;

pub use export::{export_tree, tree_json, TreeFormat};

pub const DEFAULT_CAP: usize = 64;

/// Which coordinate axis of a chart an exceptional divisor occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// The divisor is `{first coordinate = 0}`.
    U,
    /// The divisor is `{second coordinate = 0}`.
    V,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcDivisor {
    pub id: usize,
    /// Order of the pulled-back curve along the divisor.
    pub m: u32,
    /// Order of the relative canonical divisor along the divisor.
    pub a: u32,
}

impl ExcDivisor {
    pub fn candidate(&self) -> Rat {
        Rat::new((self.a + 1).into(), self.m.into())
    }
}

/// A point infinitely near the origin, in local coordinates centred at it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartPoint {
    pub coords: (String, String),
    /// Position in the chart before recentring.
    pub location: (Rat, Rat),
    pub incident: Vec<(usize, Axis)>,
    /// Strict transform of the curve, recentred at this point.
    pub equation: BPoly,
    /// Divisor created by the blowup that produced this point.
    pub parent: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupNode {
    pub center: ChartPoint,
    pub divisor: ExcDivisor,
    /// Divisor id of the parent blowup, `None` for the origin.
    pub parent: Option<usize>,
    /// No further blowup happens on this divisor.
    pub terminal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionTree {
    pub input: BPoly,
    /// Blowups in the order they were performed; divisor ids are `1..`.
    pub nodes: Vec<BlowupNode>,
    /// Centres that still need a blowup.
    pub pending: Vec<ChartPoint>,
}

impl ResolutionTree {
    pub fn is_complete(&self) -> bool {
        self.pending.is_empty()
    }

    pub fn divisors(&self) -> impl Iterator<Item = &ExcDivisor> {
        self.nodes.iter().map(|n| &n.divisor)
    }

    pub fn divisor(&self, id: usize) -> Option<&ExcDivisor> {
        self.nodes.get(id.checked_sub(1)?).map(|n| &n.divisor)
    }

    pub fn node(&self, id: usize) -> Option<&BlowupNode> {
        self.nodes.get(id.checked_sub(1)?)
    }

    /// Ids on the path from the root to `id`, inclusive.
    pub fn ancestry(&self, id: usize) -> Vec<usize> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.node(cur).and_then(|n| n.parent) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}

/// Strict transform and exceptional order in one chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartTransform {
    pub strict: BPoly,
    pub order: u32,
}

/// Both affine charts of the blowup of the origin: `(u, u*v)` and `(u*v, v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupCharts {
    pub first: ChartTransform,
    pub second: ChartTransform,
}

fn chart_substitute(h: &BPoly, mu: u32, first: bool) -> BPoly {
    BPoly::from_terms(h.terms().map(|(&(i, j), c)| {
        let m = if first {
            (i + j - mu, j)
        } else {
            (i, i + j - mu)
        };
        (m, c.clone())
    }))
}

pub fn blowup_transform(f_local: &BPoly) -> Result<BlowupCharts> {
    if f_local.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mu = match f_local.multiplicity_at_origin() {
        Mult::Finite(0) => return Err(Error::NotThroughOrigin),
        Mult::Finite(mu) => mu,
        Mult::Infinite => unreachable!("nonzero polynomial"),
    };
    Ok(BlowupCharts {
        first: ChartTransform {
            strict: chart_substitute(f_local, mu, true),
            order: mu,
        },
        second: ChartTransform {
            strict: chart_substitute(f_local, mu, false),
            order: mu,
        },
    })
}

/// Whether the curve together with the incident divisors fails to be a
/// normal crossing at the chart origin.
fn needs_blowup(h: &BPoly, incident: &[(usize, Axis)]) -> bool {
    match h.multiplicity_at_origin() {
        Mult::Finite(0) => false,
        Mult::Finite(1) => match incident {
            [] => false,
            [(_, axis)] => {
                let tangent_coeff = match axis {
                    Axis::U => h.coeff(0, 1),
                    Axis::V => h.coeff(1, 0),
                };
                tangent_coeff.is_zero()
            }
            _ => true,
        },
        _ => true,
    }
}

struct Engine {
    nodes: Vec<BlowupNode>,
    stack: Vec<ChartPoint>,
}

impl Engine {
    fn blow_up(&mut self, p: ChartPoint) -> Result<()> {
        let h = &p.equation;
        let mu = h.multiplicity_at_origin().finite().expect("nonzero");
        let mut m = mu;
        let mut a = 1;
        for (id, _) in &p.incident {
            let e = &self.nodes[id - 1].divisor;
            m += e.m;
            a += e.a;
        }
        let id = self.nodes.len() + 1;
        if let Some(parent) = p.parent {
            self.nodes[parent - 1].terminal = false;
        }
        let old_u = p
            .incident
            .iter()
            .find(|(_, ax)| *ax == Axis::U)
            .map(|e| e.0);
        let old_v = p
            .incident
            .iter()
            .find(|(_, ax)| *ax == Axis::V)
            .map(|e| e.0);
        let charts = blowup_transform(h)?;
        let mut children = Vec::new();

        // First chart: the new divisor is {u = 0}, an old V-divisor stays {v = 0}.
        let first = &charts.first.strict;
        let on_divisor = UPoly::new(first.coeffs_at_x0());
        let labels = (format!("x{id}"), format!("y{id}"));
        let (_, factors) = factor_rational(&on_divisor);
        for (factor, e) in factors {
            let deg = factor.degree().expect("nonconstant factor");
            if deg >= 2 {
                if e >= 2 {
                    return Err(Error::IrrationalCenter {
                        minimal_polynomial: factor.render("t"),
                    });
                }
                continue;
            }
            let root = -factor.coeff(0) / factor.coeff(1);
            let mut incident = vec![(id, Axis::U)];
            if root.is_zero() {
                if let Some(v) = old_v {
                    incident.push((v, Axis::V));
                }
            }
            children.push(ChartPoint {
                coords: labels.clone(),
                location: (Rat::zero(), root.clone()),
                incident,
                equation: first.translate((&Rat::zero(), &root)),
                parent: Some(id),
            });
        }

        // Second chart: only its origin is not already covered by the first.
        let second = &charts.second.strict;
        if second.vanishes_at_origin() {
            let mut incident = Vec::new();
            if let Some(u) = old_u {
                incident.push((u, Axis::U));
            }
            incident.push((id, Axis::V));
            children.push(ChartPoint {
                coords: (format!("x{id}'"), format!("y{id}'")),
                location: (Rat::zero(), Rat::zero()),
                incident,
                equation: second.clone(),
                parent: Some(id),
            });
        }

        self.nodes.push(BlowupNode {
            parent: p.parent,
            center: p,
            divisor: ExcDivisor { id, m, a },
            terminal: true,
        });
        // Depth first, in the order the points were found.
        for c in children.into_iter().rev() {
            if needs_blowup(&c.equation, &c.incident) {
                self.stack.push(c);
            }
        }
        Ok(())
    }
}

fn root_point(f: &BPoly) -> ChartPoint {
    ChartPoint {
        coords: ("x".into(), "y".into()),
        location: (Rat::zero(), Rat::zero()),
        incident: Vec::new(),
        equation: f.clone(),
        parent: None,
    }
}

fn check_input(f: &BPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() {
        return Err(Error::NotThroughOrigin);
    }
    if !is_square_free(f)? {
        return Err(Error::NotSquareFree);
    }
    Ok(())
}

/// Performs at most `steps` blowups and returns the tree, with any
/// remaining centres listed as pending.
pub fn resolve_partial(f: &BPoly, steps: usize) -> Result<ResolutionTree> {
    check_input(f)?;
    let mut engine = Engine {
        nodes: Vec::new(),
        stack: Vec::new(),
    };
    let root = root_point(f);
    if needs_blowup(&root.equation, &root.incident) {
        engine.stack.push(root);
    }
    while engine.nodes.len() < steps {
        let Some(p) = engine.stack.pop() else { break };
        engine.blow_up(p)?;
    }
    Ok(ResolutionTree {
        input: f.clone(),
        nodes: engine.nodes,
        pending: engine.stack.into_iter().rev().collect(),
    })
}

/// Resolves the germ of `f` at the origin. Fails with
/// [`Error::ResolutionCap`] if more than `cap` blowups would be needed.
pub fn resolve_over_origin(f: &BPoly, cap: usize) -> Result<ResolutionTree> {
    let tree = resolve_partial(f, cap)?;
    if !tree.is_complete() {
        return Err(Error::ResolutionCap(cap));
    }
    Ok(tree)
}

pub fn lct_from_tree(t: &ResolutionTree) -> Result<Rat> {
    if !t.is_complete() {
        return Err(Error::IncompleteTree);
    }
    Ok(t.divisors()
        .map(ExcDivisor::candidate)
        .fold(Rat::one(), |acc, c| if c < acc { c } else { acc }))
}

/// Coefficient `lambda * m - a` of each divisor in the log pullback of
/// `lambda * C`.
pub fn log_pullback_coefficients(t: &ResolutionTree, lambda: &Rat) -> Result<BTreeMap<usize, Rat>> {
    if !t.is_complete() {
        return Err(Error::IncompleteTree);
    }
    Ok(t.divisors()
        .map(|e| (e.id, lambda * int(e.m.into()) - int(e.a.into())))
        .collect())
}
