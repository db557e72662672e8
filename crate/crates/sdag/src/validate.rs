use crate::SDag;
use graph_core::Digraph;
use separations::{crosses, sep_leq};
use serde::Serialize;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SdagReport {
    pub acyclic: bool,
    /// First node with more than two children.
    pub out_degree_violation: Option<usize>,
    /// Arcs whose separation is invalid for the digraph, with the reason.
    pub invalid_arcs: Vec<((usize, usize), String)>,
    /// A pair of consecutive arcs `(t1,t2),(t2,t3)` with unordered separations.
    pub consistency_violation: Option<((usize, usize), (usize, usize))>,
    pub width: usize,
}

impl SdagReport {
    pub fn is_valid(&self) -> bool {
        self.acyclic && self.out_degree_violation.is_none() && self.invalid_arcs.is_empty() && self.consistency_violation.is_none()
    }
}

pub fn validate_sdag(d: &Digraph, s: &SDag) -> SdagReport {
    let mut rep = SdagReport { acyclic: s.topological_nodes().is_some(), ..Default::default() };
    if s.vertex_count() != d.vertex_count() {
        rep.invalid_arcs.push(((0, 0), format!("S-DAG is over {} vertices, digraph has {}", s.vertex_count(), d.vertex_count())));
        return rep;
    }
    let children = s.children();
    let parents = s.parents();
    rep.out_degree_violation = (0..s.node_count()).find(|&t| children[t].len() > 2);
    for (u, v, sep) in s.arcs() {
        if let Err(e) = sep.validate(d) {
            rep.invalid_arcs.push(((u, v), e.to_string()));
        }
    }
    'outer: for t2 in 0..s.node_count() {
        for &t1 in &parents[t2] {
            for &t3 in &children[t2] {
                if !sep_leq(s.sigma(t1, t2).unwrap(), s.sigma(t2, t3).unwrap()) {
                    rep.consistency_violation = Some(((t1, t2), (t2, t3)));
                    break 'outer;
                }
            }
        }
    }
    rep.width = s.width();
    rep
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct NiceReport {
    pub n1_unique_empty_source: bool,
    pub n2_sigma_is_top: bool,
    pub n3_single_change: bool,
    pub n4_split_children_flat: bool,
    pub n5_siblings_cross: bool,
    /// Offending node (N1, N3, N4) or arc source (N2, N5) per failed flag.
    pub witnesses: Vec<(String, usize, usize)>,
}

impl NiceReport {
    pub fn is_nice(&self) -> bool {
        self.n1_unique_empty_source && self.n2_sigma_is_top && self.n3_single_change && self.n4_split_children_flat && self.n5_siblings_cross
    }
}

pub fn validate_nice(_d: &Digraph, s: &SDag) -> NiceReport {
    let der = s.derive();
    let children = s.children();
    let mut rep = NiceReport::default();
    let sources = s.sources();
    rep.n1_unique_empty_source = sources.len() == 1 && der.bag[sources[0]].is_empty();
    if !rep.n1_unique_empty_source {
        rep.witnesses.push(("N1".into(), sources.len(), sources.first().copied().unwrap_or(0)));
    }
    rep.n2_sigma_is_top = true;
    for (u, v, sep) in s.arcs() {
        if *sep != der.top[v] {
            rep.n2_sigma_is_top = false;
            rep.witnesses.push(("N2".into(), u, v));
            break;
        }
    }
    rep.n3_single_change = true;
    rep.n4_split_children_flat = true;
    rep.n5_siblings_cross = true;
    for t in 0..s.node_count() {
        match children[t].as_slice() {
            &[c] => {
                if rep.n3_single_change && der.bag[t].symmetric_difference(&der.bag[c]).len() > 1 {
                    rep.n3_single_change = false;
                    rep.witnesses.push(("N3".into(), t, c));
                }
            }
            &[c1, c2] => {
                for c in [c1, c2] {
                    if rep.n4_split_children_flat && der.top[c] != der.bot[c] {
                        rep.n4_split_children_flat = false;
                        rep.witnesses.push(("N4".into(), t, c));
                    }
                }
                if rep.n5_siblings_cross && !crosses(s.sigma(t, c1).unwrap(), s.sigma(t, c2).unwrap()) {
                    rep.n5_siblings_cross = false;
                    rep.witnesses.push(("N5".into(), t, c1));
                }
            }
            _ => {}
        }
    }
    rep
}
