//! Passes addressable by name, as used by the command line.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::repr::Model;
use crate::transforms::report::{Pass, PassReport};
use crate::transforms::*;

/// Name, source model tag and target model tag of every registered pass.
pub const PASSES: &[(&str, &str, &str)] = &[
    ("nn-to-mpptf", "nn", "mpptf"),
    ("mpptf-to-hnn", "mpptf", "nn"),
    ("mpptf-to-nn", "mpptf", "nn"),
    ("knn-to-mpptf", "knn", "mpptf"),
    ("knn-to-kstat", "knn", "kstat"),
    ("kstat-to-knn", "kstat", "knn"),
    ("kstat-equalize", "kstat", "kstat"),
    ("twosided-to-labeled", "kstat", "labeled_kstat"),
    ("labeled-to-twosided", "labeled_kstat", "kstat"),
    ("mpptf-to-ldl", "mpptf", "ldl"),
    ("eldl-to-kstat", "eldl", "labeled_kstat"),
    ("sym-maj-to-kstat", "sym_maj", "labeled_kstat"),
    ("sym-and-to-knn", "sym_and", "knn"),
    ("hnn-to-depth3", "nn", "circuit"),
    ("hnn-to-depth3-or-and", "nn", "circuit"),
    ("hnn-to-depth3-and-or", "nn", "circuit"),
    ("hnn-to-depth3-slice", "nn", "circuit"),
    ("hnn-to-depth2", "nn", "circuit"),
];

/// Shortest chain of registered passes from one model tag to another, taking
/// the first registered pass on each edge. An empty chain means the tags agree.
pub fn pass_route(from: &str, to: &str) -> Option<Vec<&'static str>> {
    let mut prev: BTreeMap<&str, (&str, &'static str)> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(tag) = queue.pop_front() {
        if tag == to {
            let mut path = Vec::new();
            let mut at = to;
            while at != from {
                let (p, pass) = prev[at];
                path.push(pass);
                at = p;
            }
            path.reverse();
            return Some(path);
        }
        for &(pass, src, dst) in PASSES {
            if src == tag && dst != from && !prev.contains_key(dst) {
                prev.insert(dst, (tag, pass));
                queue.push_back(dst);
            }
        }
    }
    None
}

/// Runs the chain from [`pass_route`], returning the reports in order.
pub fn convert_to(m: Model, target: &str) -> Result<(Model, Vec<PassReport>)> {
    let chain = pass_route(m.tag(), target)
        .ok_or_else(|| Error::InvalidParams(format!("no pass chain from {} to {target}", m.tag())))?;
    let mut m = m;
    let mut reports = Vec::new();
    for pass in chain {
        let (next, rep) = run_pass(pass, &m)?;
        m = next;
        reports.push(rep);
    }
    Ok((m, reports))
}

fn erase<T: Into<Model>>(p: Pass<T>) -> (Model, PassReport) {
    (p.output.into(), p.report)
}

/// Runs the named pass on `m`.
pub fn run_pass(name: &str, m: &Model) -> Result<(Model, PassReport)> {
    let Some(&(_, source, _)) = PASSES.iter().find(|p| p.0 == name) else {
        let known: Vec<&str> = PASSES.iter().map(|p| p.0).collect();
        return Err(Error::InvalidParams(format!("unknown pass {name:?}; known passes: {}", known.join(", "))));
    };
    let wrong = || Error::InvalidParams(format!("pass {name} expects a {source} model, got {}", m.tag()));
    Ok(match (name, m) {
        ("nn-to-mpptf", Model::Nn(r)) => erase(nn_to_mpptf(r)?),
        ("mpptf-to-hnn", Model::Mpptf(r)) => erase(mpptf_to_hnn(r)?),
        ("mpptf-to-nn", Model::Mpptf(r)) => erase(mpptf_to_nn(r)?),
        ("knn-to-mpptf", Model::Knn(r)) => erase(knn_to_mpptf(r)?),
        ("knn-to-kstat", Model::Knn(r)) => erase(knn_to_kstat(r)?),
        ("kstat-to-knn", Model::Kstat(r)) => erase(kstat_to_knn(r)?),
        ("kstat-equalize", Model::Kstat(r)) => erase(kstat_equalize(r)?),
        ("twosided-to-labeled", Model::Kstat(r)) => erase(twosided_to_labeled(r)?),
        ("labeled-to-twosided", Model::LabeledKstat(r)) => erase(labeled_to_twosided(r)?),
        ("mpptf-to-ldl", Model::Mpptf(r)) => erase(mpptf_to_ldl(r)?),
        ("eldl-to-kstat", Model::DecisionList(r)) => erase(eldl_to_kstat(r)?),
        ("sym-maj-to-kstat", Model::SymMaj(r)) => erase(sym_maj_to_kstat(r)?),
        ("sym-and-to-knn", Model::SymAnd(r)) => erase(sym_and_to_knn(r)?),
        ("hnn-to-depth3", Model::Nn(r)) => erase(hnn_to_depth3(r, Depth3Variant::Smallest)?),
        ("hnn-to-depth3-or-and", Model::Nn(r)) => erase(hnn_to_depth3(r, Depth3Variant::OrAnd)?),
        ("hnn-to-depth3-and-or", Model::Nn(r)) => erase(hnn_to_depth3(r, Depth3Variant::AndOr)?),
        ("hnn-to-depth3-slice", Model::Nn(r)) => erase(hnn_to_depth3_slice(r)?),
        ("hnn-to-depth2", Model::Nn(r)) => erase(hnn_to_depth2(r)?),
        _ => return Err(wrong()),
    })
}
