//! Structural diagnostics over a given network.
//!
//! [`color_edges`] replays a sequence from two root positions. A position
//! becomes active when it first meets an active position; that edge is
//! black and makes the active endpoint its parent. An edge between two
//! active positions is red, except the first one joining the two root trees,
//! which is black and recorded as the join edge. An edge between two
//! inactive positions moves no counter and is flagged removable.
//!
//! [`deficit_report`] evaluates `deficit(v) = |T_v| - Σ_{u ∈ T_v} d_R(u)` over
//! the black forest, and [`star_occurrence_classes`] labels each occurrence
//! of a star transposition as black (sole), blue (first of several) or red
//! (repeat).

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::network::Network;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeColor {
    Black,
    Red,
    Removable,
}

impl fmt::Display for EdgeColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeColor::Black => "black",
            EdgeColor::Red => "red",
            EdgeColor::Removable => "removable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub n: u32,
    pub roots: [u32; 2],
    pub colors: Vec<EdgeColor>,
    /// Non-root positions with the (0-based) index of the transposition that
    /// activated them, in activation order.
    pub activation_order: Vec<(u32, usize)>,
    /// `parent[v]` for activated non-root `v`; index 0 is unused.
    pub parent: Vec<Option<u32>>,
    /// Which root tree (0 or 1) each activated position belongs to.
    pub tree: Vec<Option<u8>>,
    pub join_edge: Option<usize>,
}

impl EdgeColoring {
    pub fn count(&self, color: EdgeColor) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    pub fn is_active(&self, v: u32) -> bool {
        self.tree[v as usize].is_some()
    }

    /// Red edges incident to each position; index 0 is unused.
    pub fn red_degrees(&self, net: &Network) -> Vec<u32> {
        let mut deg = vec![0; self.n as usize + 1];
        for (tau, &c) in net.transpositions().iter().zip(&self.colors) {
            if c == EdgeColor::Red {
                deg[tau.a() as usize] += 1;
                deg[tau.b() as usize] += 1;
            }
        }
        deg
    }

    pub fn removable(&self) -> Vec<usize> {
        (0..self.colors.len()).filter(|&i| self.colors[i] == EdgeColor::Removable).collect()
    }

    /// Text report: one `<idx> <a> <b> <color>` line per transposition
    /// (1-based index), then summary lines.
    pub fn render(&self, net: &Network) -> String {
        let mut out = String::new();
        for (i, (tau, c)) in net.transpositions().iter().zip(&self.colors).enumerate() {
            let _ = writeln!(out, "{} {} {} {c}", i + 1, tau.a(), tau.b());
        }
        let _ = writeln!(
            out,
            "black={} red={} removable={}",
            self.count(EdgeColor::Black),
            self.count(EdgeColor::Red),
            self.count(EdgeColor::Removable)
        );
        match self.join_edge {
            Some(i) => {
                let _ = writeln!(out, "join={} (colored black; the plain rule would make it red)", i + 1);
            }
            None => {
                let _ = writeln!(out, "join=none");
            }
        }
        let deg = self.red_degrees(net);
        let _ = writeln!(out, "red_degree_sum={}", deg.iter().sum::<u32>());
        out
    }
}

/// Replays `net` from the two root positions.
pub fn color_edges(net: &Network, roots: [u32; 2]) -> Result<EdgeColoring> {
    let n = net.n();
    if roots[0] == roots[1] || roots.iter().any(|&r| r == 0 || r > n) {
        return Err(Error::InvalidParameter(format!("roots {roots:?} must be distinct positions in 1..={n}")));
    }
    let mut tree: Vec<Option<u8>> = vec![None; n as usize + 1];
    tree[roots[0] as usize] = Some(0);
    tree[roots[1] as usize] = Some(1);
    let mut parent = vec![None; n as usize + 1];
    let mut colors = Vec::with_capacity(net.len());
    let mut activation_order = Vec::new();
    let mut join_edge = None;

    for (i, tau) in net.transpositions().iter().enumerate() {
        let (a, b) = (tau.a(), tau.b());
        let color = match (tree[a as usize], tree[b as usize]) {
            (None, None) => EdgeColor::Removable,
            (Some(side), None) | (None, Some(side)) => {
                let (old, new) = if tree[a as usize].is_some() { (a, b) } else { (b, a) };
                tree[new as usize] = Some(side);
                parent[new as usize] = Some(old);
                activation_order.push((new, i));
                EdgeColor::Black
            }
            (Some(x), Some(y)) => {
                if x != y && join_edge.is_none() {
                    join_edge = Some(i);
                    EdgeColor::Black
                } else {
                    EdgeColor::Red
                }
            }
        };
        colors.push(color);
    }
    Ok(EdgeColoring { n, roots, colors, activation_order, parent, tree, join_edge })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDeficit {
    pub vertex: u32,
    pub parent: Option<u32>,
    pub subtree_size: u32,
    /// `Σ_{u ∈ T_v} d_R(u)`.
    pub red_sum: u32,
    /// Computed bottom-up as `1 - d_R(v) + Σ_{children} deficit(u)`.
    pub deficit: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficitReport {
    /// Activated positions (roots included), by position.
    pub vertices: Vec<VertexDeficit>,
    pub red_degree_sum: u32,
    /// All positions activated and the two root trees joined.
    pub spanning: bool,
    pub warnings: Vec<String>,
}

impl DeficitReport {
    pub fn get(&self, v: u32) -> Option<&VertexDeficit> {
        self.vertices.iter().find(|d| d.vertex == v)
    }

    /// Positions with nonzero deficit.
    pub fn nonzero(&self) -> Vec<u32> {
        self.vertices.iter().filter(|d| d.deficit != 0).map(|d| d.vertex).collect()
    }
}

impl fmt::Display for DeficitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.vertices {
            let parent = d.parent.map_or_else(|| "root".to_string(), |p| p.to_string());
            writeln!(
                f,
                "vertex {} parent={} subtree={} red_sum={} deficit={}",
                d.vertex, parent, d.subtree_size, d.red_sum, d.deficit
            )?;
        }
        writeln!(f, "red_degree_sum={}", self.red_degree_sum)?;
        let nz: Vec<String> = self.nonzero().iter().map(u32::to_string).collect();
        writeln!(f, "nonzero_deficit={}", if nz.is_empty() { "none".into() } else { nz.join(",") })?;
        writeln!(f, "spanning={}", self.spanning)?;
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

/// Deficits over the black forest rooted at positions 1 and 2.
pub fn deficit_report(net: &Network) -> Result<DeficitReport> {
    let coloring = color_edges(net, [1, 2])?;
    Ok(deficits_from(net, &coloring))
}

pub fn deficits_from(net: &Network, coloring: &EdgeColoring) -> DeficitReport {
    let n = coloring.n as usize;
    let deg = coloring.red_degrees(net);

    let mut children: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for &(v, _) in &coloring.activation_order {
        let p = coloring.parent[v as usize].expect("activated vertex has a parent");
        children[p as usize].push(v);
    }

    // Bottom-up deficit via the recursive identity: children are activated
    // after their parent, so reverse activation order is a valid post-order.
    let mut deficit = vec![0i64; n + 1];
    let order: Vec<u32> =
        coloring.roots.iter().copied().chain(coloring.activation_order.iter().map(|&(v, _)| v)).collect();
    for &v in order.iter().rev() {
        let kids: i64 = children[v as usize].iter().map(|&u| deficit[u as usize]).sum();
        deficit[v as usize] = 1 - i64::from(deg[v as usize]) + kids;
    }

    // Subtree sums by charging every vertex to each of its ancestors.
    let mut size = vec![0u32; n + 1];
    let mut red_sum = vec![0u32; n + 1];
    for &u in &order {
        let mut v = Some(u);
        while let Some(x) = v {
            size[x as usize] += 1;
            red_sum[x as usize] += deg[u as usize];
            v = coloring.parent[x as usize];
        }
    }

    let mut vertices: Vec<VertexDeficit> = order
        .iter()
        .map(|&v| VertexDeficit {
            vertex: v,
            parent: coloring.parent[v as usize],
            subtree_size: size[v as usize],
            red_sum: red_sum[v as usize],
            deficit: deficit[v as usize],
        })
        .collect();
    vertices.sort_by_key(|d| d.vertex);

    let unreached: Vec<u32> = (1..=coloring.n).filter(|&v| !coloring.is_active(v)).collect();
    let mut warnings = Vec::new();
    if coloring.join_edge.is_none() {
        warnings.push("root trees never joined; deficits are per tree".to_string());
    }
    if !unreached.is_empty() {
        let list: Vec<String> = unreached.iter().map(u32::to_string).collect();
        warnings.push(format!("positions never reached: {}", list.join(",")));
    }
    let removable = coloring.removable();
    if !removable.is_empty() {
        let list: Vec<String> = removable.iter().map(|i| (i + 1).to_string()).collect();
        warnings.push(format!("transpositions between inactive positions: {}", list.join(",")));
    }

    DeficitReport {
        vertices,
        red_degree_sum: deg.iter().sum(),
        spanning: coloring.join_edge.is_some() && unreached.is_empty(),
        warnings,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OccurrenceClass {
    /// The only occurrence of its transposition.
    Black,
    /// A repeat occurrence.
    Red,
    /// The first of several occurrences.
    Blue,
}

impl fmt::Display for OccurrenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OccurrenceClass::Black => "black",
            OccurrenceClass::Red => "red",
            OccurrenceClass::Blue => "blue",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceClasses {
    pub classes: Vec<OccurrenceClass>,
    pub black: usize,
    pub red: usize,
    pub blue: usize,
}

impl OccurrenceClasses {
    pub fn render(&self, net: &Network) -> String {
        let mut out = String::new();
        for (i, (tau, c)) in net.transpositions().iter().zip(&self.classes).enumerate() {
            let _ = writeln!(out, "{} {} {} {c}", i + 1, tau.a(), tau.b());
        }
        let _ = writeln!(out, "black={} red={} blue={}", self.black, self.red, self.blue);
        out
    }
}

pub fn star_occurrence_classes(net: &Network) -> Result<OccurrenceClasses> {
    if !net.is_star() {
        return Err(Error::NotStar);
    }
    let n = net.n() as usize;
    let mut total = vec![0usize; n + 1];
    for tau in net.transpositions() {
        total[tau.b() as usize] += 1;
    }
    let mut seen = vec![false; n + 1];
    let classes: Vec<OccurrenceClass> = net
        .transpositions()
        .iter()
        .map(|tau| {
            let x = tau.b() as usize;
            if std::mem::replace(&mut seen[x], true) {
                OccurrenceClass::Red
            } else if total[x] == 1 {
                OccurrenceClass::Black
            } else {
                OccurrenceClass::Blue
            }
        })
        .collect();
    let count = |c| classes.iter().filter(|&&k| k == c).count();
    let (black, red, blue) = (count(OccurrenceClass::Black), count(OccurrenceClass::Red), count(OccurrenceClass::Blue));
    Ok(OccurrenceClasses { classes, black, red, blue })
}
