//! Structure-constant tables serialized as JSON.
//!
//! A [`TableDocument`] freezes everything needed to work with the ring at one
//! genus without recomputing it:
//!
//! - the canonical basis, in its deterministic order,
//! - the intersection constants,
//! - every nonzero product of basis elements (unordered pairs), expanded
//!   back over the basis,
//! - the Gram matrix of the Poincare pairing, block by block.
//!
//! All rationals are serialized exactly as `p/q` strings (plain `p` when the
//! value is an integer), never as floats. [`check_against_live`] re-derives
//! the same data and confirms the document matches, entry by entry.

use std::collections::BTreeMap;

use crcoh::{canonical_basis, constants, poincare_pair, product, BasisKind, CrClass, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result, MAX_TABLE_GENUS};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDocument {
    pub genus: usize,
    pub basis: Vec<BasisEntry>,
    pub constants: ConstantsEntry,
    pub products: Vec<ProductEntry>,
    pub pairings: Vec<PairingBlock>,
}

/// One basis element: kappa powers use label `O` and monomial `k^m`, twisted
/// elements use the label bitstring and the dotted monomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub monomial: String,
    pub cr_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsEntry {
    pub thaddeus_number: String,
    pub v: String,
}

/// A nonzero product of basis elements `left <= right`, with the result as
/// sparse `(basis index, coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: usize,
    pub right: usize,
    pub result: Vec<(usize, String)>,
}

/// One diagonal block of the Gram matrix of the Poincare pairing: the kappa
/// powers (`name` is `kappa`) or one twisted sector (`name` is the label).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingBlock {
    pub name: String,
    pub rows: Vec<Vec<String>>,
}

pub fn export_table(genus: usize) -> Result<TableDocument> {
    if genus > MAX_TABLE_GENUS {
        return Err(CliError::TableCap {
            genus,
            max: MAX_TABLE_GENUS,
        });
    }
    let basis = canonical_basis(genus)?;
    let index = basis_index(genus)?;
    let c = constants(genus)?;

    let entries = basis
        .iter()
        .map(|b| {
            let (label, monomial) = match &b.kind {
                BasisKind::Kappa(m) => ("O".to_string(), format!("k^{m}")),
                BasisKind::Sector { label, monomial } => {
                    (label.to_string(), monomial.to_string())
                }
            };
            BasisEntry {
                label,
                monomial,
                cr_degree: b.cr_degree,
            }
        })
        .collect();

    let mut products = Vec::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let p = product(&basis[i].class, &basis[j].class)?;
            let result = expand(&p, &index);
            if !result.is_empty() {
                products.push(ProductEntry {
                    left: i,
                    right: j,
                    result,
                });
            }
        }
    }

    let mut pairings = Vec::new();
    let mut blocks: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut kappa_block = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        match &b.kind {
            BasisKind::Kappa(_) => kappa_block.push(i),
            BasisKind::Sector { label, .. } => {
                blocks.entry(label.to_string()).or_default().push(i)
            }
        }
    }
    pairings.push(gram_block("kappa", &kappa_block, &basis)?);
    for (name, members) in &blocks {
        pairings.push(gram_block(name, members, &basis)?);
    }

    Ok(TableDocument {
        genus,
        basis: entries,
        constants: ConstantsEntry {
            thaddeus_number: c.thaddeus_number.to_string(),
            v: c.v.to_string(),
        },
        products,
        pairings,
    })
}

/// Recomputes every entry of the document from scratch and reports the first
/// disagreement with the live ring, if any.
pub fn check_against_live(doc: &TableDocument) -> Result<()> {
    let fresh = export_table(doc.genus)?;
    if doc.basis != fresh.basis {
        return Err(mismatch(format!(
            "basis lists differ ({} entries vs {} recomputed)",
            doc.basis.len(),
            fresh.basis.len()
        )));
    }
    if doc.constants != fresh.constants {
        return Err(mismatch("intersection constants differ".into()));
    }
    if doc.products.len() != fresh.products.len() {
        return Err(mismatch(format!(
            "{} product entries vs {} recomputed",
            doc.products.len(),
            fresh.products.len()
        )));
    }
    for (have, want) in doc.products.iter().zip(&fresh.products) {
        if have != want {
            return Err(mismatch(format!(
                "product of basis elements {} and {} disagrees",
                have.left, have.right
            )));
        }
    }
    if doc.pairings != fresh.pairings {
        return Err(mismatch("pairing blocks differ".into()));
    }
    Ok(())
}

fn mismatch(detail: String) -> CliError {
    CliError::TableMismatch(detail)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Kappa(usize),
    Sector(u64, u64),
}

fn key_of(kind: &BasisKind) -> Key {
    match kind {
        BasisKind::Kappa(m) => Key::Kappa(*m),
        BasisKind::Sector { label, monomial } => Key::Sector(label.bits(), monomial.mask()),
    }
}

fn basis_index(genus: usize) -> Result<BTreeMap<Key, usize>> {
    let basis = canonical_basis(genus)?;
    Ok(basis
        .iter()
        .enumerate()
        .map(|(i, b)| (key_of(&b.kind), i))
        .collect())
}

fn expand(class: &CrClass, index: &BTreeMap<Key, usize>) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for (m, c) in class.kappa_coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.push((index[&Key::Kappa(m)], c.clone()));
        }
    }
    for (label, part) in class.sectors() {
        for (mono, c) in part.terms() {
            out.push((index[&Key::Sector(label.bits(), mono.mask())], c.clone()));
        }
    }
    out.sort_by_key(|(i, _)| *i);
    out.into_iter().map(|(i, c)| (i, c.to_string())).collect()
}

fn gram_block(
    name: &str,
    members: &[usize],
    basis: &[crcoh::BasisElement],
) -> Result<PairingBlock> {
    let mut rows = Vec::with_capacity(members.len());
    for &i in members {
        let mut row = Vec::with_capacity(members.len());
        for &j in members {
            row.push(poincare_pair(&basis[i].class, &basis[j].class)?.to_string());
        }
        rows.push(row);
    }
    Ok(PairingBlock {
        name: name.to_string(),
        rows,
    })
}
