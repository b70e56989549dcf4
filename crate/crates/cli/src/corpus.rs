//! Corpus documents: groups, pairs and presentations.

use baer_core::fingrp::{
    alternating, cyclic, dihedral, direct_product, quaternion, symmetric, FingrpError, FiniteGroup, PairOfGroups,
    Subgroup,
};
use baer_core::nilfree::{NilfreeError, PresentationWithSubgroup};
use serde::Deserialize;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;
use thiserror::Error;

const DEFAULT: &str = include_str!("../corpus/default.json");

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("corpus parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("duplicate {kind} name {name:?}")]
    Duplicate { kind: &'static str, name: String },
    #[error("{context} refers to unknown group {group:?}")]
    UnknownGroup { context: String, group: String },
    #[error("group {name:?}: {source}")]
    Group { name: String, source: FingrpError },
    #[error("pair {name:?}: {source}")]
    Pair { name: String, source: FingrpError },
    #[error("presentation {name:?}: {source}")]
    Presentation { name: String, source: NilfreeError },
}

impl CorpusError {
    /// Axiom and normality violations are verification failures; everything
    /// else is a configuration error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CorpusError::Group { source, .. } | CorpusError::Pair { source, .. } => match source {
                FingrpError::Unsupported(_) => 2,
                _ => 1,
            },
            _ => 2,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default)]
    groups: Vec<GroupEntry>,
    #[serde(default)]
    pairs: Vec<PairEntry>,
    #[serde(default)]
    presentations: Vec<PresentationEntry>,
    #[serde(default)]
    auto_pairs: Option<AutoPairs>,
}

#[derive(Debug, Deserialize)]
struct GroupEntry {
    name: String,
    #[serde(flatten)]
    def: GroupDef,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum GroupDef {
    Table { table: Vec<Vec<usize>> },
    Construct { construct: Construct },
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Construct {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion(usize),
    Product(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairEntry {
    name: String,
    group: String,
    normal: NormalSpec,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum NormalSpec {
    Elements(Vec<usize>),
    Generated { generated_by: Vec<usize> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationEntry {
    name: String,
    generators: usize,
    relators: Vec<String>,
    #[serde(default)]
    subgroup: Option<Vec<String>>,
}

/// Adds every normal subgroup of every group up to this order.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutoPairs {
    max_order: usize,
}

#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: Arc<FiniteGroup>,
}

#[derive(Clone, Debug)]
pub struct NamedPair {
    pub name: String,
    pub group: String,
    pub pair: PairOfGroups,
}

#[derive(Clone, Debug)]
pub struct NamedPresentation {
    pub name: String,
    pub presentation: PresentationWithSubgroup,
}

/// A validated corpus: tables satisfy the group axioms and every pair's
/// subgroup is normal.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub groups: Vec<NamedGroup>,
    pub pairs: Vec<NamedPair>,
    pub presentations: Vec<NamedPresentation>,
}

impl Corpus {
    pub fn group(&self, name: &str) -> Option<&Arc<FiniteGroup>> {
        self.groups.iter().find(|g| g.name == name).map(|g| &g.group)
    }

    pub fn pair(&self, name: &str) -> Option<&NamedPair> {
        self.pairs.iter().find(|p| p.name == name)
    }

    pub fn presentation(&self, name: &str) -> Option<&PresentationWithSubgroup> {
        self.presentations.iter().find(|p| p.name == name).map(|p| &p.presentation)
    }
}

pub fn default_corpus() -> Corpus {
    parse_corpus(DEFAULT).expect("built-in corpus is valid")
}

pub fn load_corpus(path: &Path) -> Result<Corpus, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.display().to_string(), source })?;
    parse_corpus(&text)
}

pub fn parse_corpus(text: &str) -> Result<Corpus, CorpusError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| CorpusError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut corpus = Corpus::default();
    for entry in &doc.groups {
        if corpus.group(&entry.name).is_some() {
            return Err(CorpusError::Duplicate { kind: "group", name: entry.name.clone() });
        }
        let group = build_group(&corpus, entry)?;
        corpus.groups.push(NamedGroup { name: entry.name.clone(), group: Arc::new(group) });
    }
    for entry in &doc.pairs {
        if corpus.pair(&entry.name).is_some() {
            return Err(CorpusError::Duplicate { kind: "pair", name: entry.name.clone() });
        }
        let g = corpus.group(&entry.group).ok_or_else(|| CorpusError::UnknownGroup {
            context: format!("pair {:?}", entry.name),
            group: entry.group.clone(),
        })?;
        let err = |source| CorpusError::Pair { name: entry.name.clone(), source };
        let n = match &entry.normal {
            NormalSpec::Elements(xs) => {
                if let Some(&x) = xs.iter().find(|&&x| x >= g.order()) {
                    return Err(err(FingrpError::BadElement(x)));
                }
                g.subgroup(xs).map_err(err)?
            }
            NormalSpec::Generated { generated_by } => {
                if let Some(&x) = generated_by.iter().find(|&&x| x >= g.order()) {
                    return Err(err(FingrpError::BadElement(x)));
                }
                g.subgroup_generated(generated_by)
            }
        };
        let pair = PairOfGroups::new(g.clone(), n).map_err(err)?;
        corpus.pairs.push(NamedPair { name: entry.name.clone(), group: entry.group.clone(), pair });
    }
    if let Some(auto) = &doc.auto_pairs {
        add_auto_pairs(&mut corpus, auto.max_order);
    }
    for entry in &doc.presentations {
        if corpus.presentation(&entry.name).is_some() {
            return Err(CorpusError::Duplicate { kind: "presentation", name: entry.name.clone() });
        }
        let relators: Vec<&str> = entry.relators.iter().map(String::as_str).collect();
        let subgroup: Vec<&str> = match &entry.subgroup {
            Some(s) => s.iter().map(String::as_str).collect(),
            None => Vec::new(),
        };
        let mut presentation = PresentationWithSubgroup::parse(entry.generators, &relators, &subgroup)
            .map_err(|source| CorpusError::Presentation { name: entry.name.clone(), source })?;
        if entry.subgroup.is_none() {
            presentation = presentation.with_full_subgroup();
        }
        corpus.presentations.push(NamedPresentation { name: entry.name.clone(), presentation });
    }
    Ok(corpus)
}

fn build_group(corpus: &Corpus, entry: &GroupEntry) -> Result<FiniteGroup, CorpusError> {
    let err = |source| CorpusError::Group { name: entry.name.clone(), source };
    match &entry.def {
        GroupDef::Table { table } => FiniteGroup::new(table.clone(), None).map_err(err),
        GroupDef::Construct { construct } => match construct {
            Construct::Cyclic(n) => cyclic(*n).map_err(err),
            Construct::Dihedral(n) => dihedral(*n).map_err(err),
            Construct::Symmetric(n) => symmetric(*n).map_err(err),
            Construct::Alternating(n) => alternating(*n).map_err(err),
            Construct::Quaternion(n) => quaternion(*n).map_err(err),
            Construct::Product(names) => {
                let mut acc = FiniteGroup::trivial();
                for name in names {
                    let g = corpus.group(name).ok_or_else(|| CorpusError::UnknownGroup {
                        context: format!("group {:?}", entry.name),
                        group: name.clone(),
                    })?;
                    acc = direct_product(&acc, g);
                }
                Ok(acc)
            }
        },
    }
}

/// `1`, `G`, or the order followed by a letter among normal subgroups of
/// that order: `D4/4b`.
fn auto_label(g: &FiniteGroup, n: &Subgroup, seen: &mut BTreeMap<usize, usize>) -> String {
    if n.is_trivial() {
        return "1".into();
    }
    if n.order() == g.order() {
        return "G".into();
    }
    let k = seen.entry(n.order()).or_default();
    *k += 1;
    let letter = (b'a' + (*k - 1) as u8 % 26) as char;
    format!("{}{letter}", n.order())
}

fn add_auto_pairs(corpus: &mut Corpus, max_order: usize) {
    let mut taken: BTreeSet<(String, Vec<usize>)> =
        corpus.pairs.iter().map(|p| (p.group.clone(), p.pair.normal().elements().to_vec())).collect();
    let mut names: BTreeSet<String> = corpus.pairs.iter().map(|p| p.name.clone()).collect();
    let mut added = Vec::new();
    for ng in &corpus.groups {
        if ng.group.order() > max_order {
            continue;
        }
        let mut seen = BTreeMap::new();
        for n in ng.group.normal_subgroups() {
            let label = auto_label(&ng.group, &n, &mut seen);
            if !taken.insert((ng.name.clone(), n.elements().to_vec())) {
                continue;
            }
            let mut name = format!("{}/{label}", ng.name);
            while names.contains(&name) {
                name.push('\'');
            }
            names.insert(name.clone());
            let pair = PairOfGroups::new(ng.group.clone(), n).expect("normal by enumeration");
            added.push(NamedPair { name, group: ng.name.clone(), pair });
        }
    }
    corpus.pairs.extend(added);
}
