//! Color-list templates on a host graph and their rainbow copies of `K_4`.
//!
//! Colors are `0..r` and a list is a `u64` bitset. A coloring is the template
//! whose lists are all singletons.

use crate::error::{Error, Result};
use crate::exact::Count;
use crate::graph::{bit, parse_graph6, vertices_of, EdgeId, Graph, VertexSet};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const MAX_COLORS: u32 = 64;

pub type ColorId = u8;
pub type ColorSet = u64;

#[inline]
pub(crate) fn color_mask(r: u32) -> ColorSet {
    if r >= 64 {
        u64::MAX
    } else {
        (1u64 << r) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    host: Graph,
    r: u32,
    lists: Vec<ColorSet>,
}

/// Six `(edge, color)` pairs in `EdgeId` order of the underlying `K_4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RainbowCopy {
    pub pairs: [(EdgeId, ColorId); 6],
}

/// Which objects the critical-triangle count ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CopyReading {
    /// Sets of six `(edge, color)` pairs.
    #[default]
    PairSets,
    /// Underlying `K_4` subgraphs admitting at least one rainbow selection.
    Subgraphs,
}

fn check_colors(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument("at least one color is required".into()));
    }
    if r > MAX_COLORS {
        return Err(Error::UnsupportedColors(r));
    }
    Ok(())
}

impl Template {
    /// Builds a template from explicit lists, one per host edge.
    pub fn new(host: Graph, r: u32, lists: Vec<ColorSet>) -> Result<Self> {
        check_colors(r)?;
        if lists.len() != host.edge_count() {
            return Err(Error::InvalidArgument(format!(
                "{} lists for {} edges",
                lists.len(),
                host.edge_count()
            )));
        }
        if let Some((e, &l)) = lists.iter().enumerate().find(|(_, &l)| l & !color_mask(r) != 0) {
            return Err(Error::InvalidColor {
                edge: e,
                color: 63 - l.leading_zeros(),
                r,
            });
        }
        Ok(Template { host, r, lists })
    }

    pub fn complete(host: &Graph, r: u32) -> Result<Self> {
        check_colors(r)?;
        let lists = vec![color_mask(r); host.edge_count()];
        Ok(Template {
            host: host.clone(),
            r,
            lists,
        })
    }

    /// Singleton template of a coloring; `colors[e]` is the color of edge `e`.
    pub fn from_coloring(host: &Graph, colors: &[ColorId], r: u32) -> Result<Self> {
        check_colors(r)?;
        if colors.len() != host.edge_count() {
            return Err(Error::InvalidArgument(format!(
                "{} colors for {} edges",
                colors.len(),
                host.edge_count()
            )));
        }
        let mut lists = Vec::with_capacity(colors.len());
        for (e, &c) in colors.iter().enumerate() {
            if u32::from(c) >= r {
                return Err(Error::InvalidColor {
                    edge: e,
                    color: c.into(),
                    r,
                });
            }
            lists.push(bit(c as usize));
        }
        Ok(Template {
            host: host.clone(),
            r,
            lists,
        })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn list(&self, e: EdgeId) -> ColorSet {
        self.lists[e]
    }

    pub fn list_size(&self, e: EdgeId) -> u32 {
        self.lists[e].count_ones()
    }

    /// List of the host edge `uv`.
    pub fn list_between(&self, u: usize, v: usize) -> Option<ColorSet> {
        self.host.edge_id(u, v).map(|e| self.lists[e])
    }

    pub fn is_complete(&self) -> bool {
        self.lists.iter().all(|&l| l == color_mask(self.r))
    }

    pub fn is_subtemplate_of(&self, other: &Template) -> Result<bool> {
        if self.host != other.host || self.r != other.r {
            return Err(Error::IncompatibleTemplates(format!(
                "hosts {} / {} with r = {} / {}",
                self.host.graph6(),
                other.host.graph6(),
                self.r,
                other.r
            )));
        }
        Ok(self.lists.iter().zip(&other.lists).all(|(a, b)| a & !b == 0))
    }

    /// Lists of size at least `threshold` become the full palette.
    pub fn lift(&self, threshold: u32) -> Template {
        let full = color_mask(self.r);
        let lists = self
            .lists
            .iter()
            .map(|&l| if l.count_ones() >= threshold { full } else { l })
            .collect();
        Template {
            host: self.host.clone(),
            r: self.r,
            lists,
        }
    }

    /// Product of list sizes over host edges at `v`.
    pub fn list_product(&self, v: usize) -> Count {
        self.list_product_within(v, self.host.neighbors(v))
    }

    /// Product of list sizes over edges from `v` to the vertices in `within`.
    pub fn list_product_within(&self, v: usize, within: VertexSet) -> Count {
        let mut acc = BigUint::from(1u32);
        for u in vertices_of(self.host.neighbors(v) & within) {
            let e = self.host.edge_id(u, v).expect("neighbor edge");
            acc *= self.lists[e].count_ones();
        }
        acc
    }

    /// Neighbors joined to `v` by a full list.
    pub fn r_neighborhood(&self, v: usize) -> VertexSet {
        let full = color_mask(self.r);
        vertices_of(self.host.neighbors(v))
            .filter(|&u| self.list_between(u, v) == Some(full))
            .fold(0, |m, u| m | bit(u))
    }

    /// Lists of the six edges of the `K_4` on `quad`, in `EdgeId` order.
    pub(crate) fn quad_lists(&self, quad: VertexSet) -> ([EdgeId; 6], [ColorSet; 6]) {
        let ids: [EdgeId; 6] = self.host.clique_edges(quad).try_into().expect("K_4 has six edges");
        (ids, ids.map(|e| self.lists[e]))
    }

    /// Number of rainbow copies of `K_4`, summed over the `K_4`s of the host.
    pub fn count_rainbow_copies(&self) -> Count {
        let quads = self.host.enumerate_cliques(4).members;
        let total: u128 = quads
            .par_iter()
            .map(|&q| injective_selections(&self.quad_lists(q).1) as u128)
            .sum();
        BigUint::from(total)
    }

    /// Rainbow copies whose `K_4` lies in `sub` and contains the triangle `tri`.
    /// `sub` must be a spanning subgraph of the host.
    pub fn count_rainbow_copies_through_triangle(
        &self,
        tri: [usize; 3],
        sub: &Graph,
        reading: CopyReading,
    ) -> Result<Count> {
        if !sub.is_spanning_subgraph_of(&self.host) {
            return Err(Error::InvalidArgument("restriction is not a spanning subgraph of the host".into()));
        }
        let [a, b, c] = tri;
        if a == b || b == c || a == c || !(sub.has_edge(a, b) && sub.has_edge(b, c) && sub.has_edge(a, c)) {
            return Err(Error::InvalidTriangle(tri));
        }
        let base = bit(a) | bit(b) | bit(c);
        let ext = sub.neighbors(a) & sub.neighbors(b) & sub.neighbors(c);
        let mut total = 0u128;
        for x in vertices_of(ext) {
            let sel = injective_selections(&self.quad_lists(base | bit(x)).1);
            total += match reading {
                CopyReading::PairSets => sel as u128,
                CopyReading::Subgraphs => u128::from(sel > 0),
            };
        }
        Ok(BigUint::from(total))
    }

    /// Explicit rainbow copies, `K_4`s in lexicographic order and selections in
    /// lexicographic color order within each.
    pub fn rainbow_copies(&self) -> Vec<RainbowCopy> {
        let mut out = Vec::new();
        for q in self.host.enumerate_cliques(4).members {
            let (ids, lists) = self.quad_lists(q);
            for_each_selection(&lists, |colors| {
                let mut pairs = [(0, 0); 6];
                for i in 0..6 {
                    pairs[i] = (ids[i], colors[i]);
                }
                out.push(RainbowCopy { pairs });
            });
        }
        out
    }

    /// `m_0 ..= m_r`: number of edges per list size.
    pub fn list_size_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.r as usize + 1];
        for &l in &self.lists {
            hist[l.count_ones() as usize] += 1;
        }
        hist
    }

    pub fn to_file(&self) -> TemplateFile {
        TemplateFile {
            graph: self.host.graph6(),
            r: self.r,
            lists: self
                .lists
                .iter()
                .map(|&l| vertices_of(l).map(|c| c as u32).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("template serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TemplateFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            offset: e.column(),
            message: e.to_string(),
        })?;
        file.into_template()
    }
}

/// On-disk template: graph6 host, color count, and per-`EdgeId` color arrays
/// with colors in `0..r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateFile {
    pub graph: String,
    pub r: u32,
    pub lists: Vec<Vec<u32>>,
}

impl TemplateFile {
    pub fn into_template(self) -> Result<Template> {
        let host = parse_graph6(&self.graph)?;
        check_colors(self.r)?;
        let mut lists = Vec::with_capacity(self.lists.len());
        for (e, colors) in self.lists.iter().enumerate() {
            let mut l = 0u64;
            for &c in colors {
                if c >= self.r {
                    return Err(Error::InvalidColor { edge: e, color: c, r: self.r });
                }
                l |= bit(c as usize);
            }
            lists.push(l);
        }
        Template::new(host, self.r, lists)
    }
}

/// Number of ways to pick pairwise distinct colors, one from each list.
pub fn injective_selections(lists: &[ColorSet; 6]) -> u64 {
    let mut sorted = *lists;
    sorted.sort_by_key(|l| l.count_ones());
    if sorted[0] == 0 {
        return 0;
    }
    if sorted.iter().all(|&l| l == sorted[0]) {
        let s = sorted[0].count_ones() as u64;
        return if s < 6 { 0 } else { (0..6).map(|i| s - i).product() };
    }
    count_from(&sorted, 0)
}

/// Injective selections from `lists` avoiding the colors in `used`.
pub(crate) fn count_from(lists: &[ColorSet], used: ColorSet) -> u64 {
    match lists {
        [] => 1,
        [a] => (a & !used).count_ones() as u64,
        [a, b] => {
            let (a, b) = (a & !used, b & !used);
            a.count_ones() as u64 * b.count_ones() as u64 - (a & b).count_ones() as u64
        }
        [first, rest @ ..] => vertices_of(first & !used)
            .map(|c| count_from(rest, used | bit(c)))
            .sum(),
    }
}

pub(crate) fn for_each_selection(lists: &[ColorSet; 6], mut emit: impl FnMut([ColorId; 6])) {
    fn go(lists: &[ColorSet; 6], i: usize, used: u64, cur: &mut [ColorId; 6], emit: &mut impl FnMut([ColorId; 6])) {
        if i == 6 {
            emit(*cur);
            return;
        }
        for c in vertices_of(lists[i] & !used) {
            cur[i] = c as ColorId;
            go(lists, i + 1, used | bit(c), cur, emit);
        }
    }
    go(lists, 0, 0, &mut [0; 6], &mut emit);
}
