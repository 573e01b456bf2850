//! Spec files shipped with the binary. The same files live under `catalog/`.

use ringlab_core::Limits;

use crate::dsl::{parse_spec, SpecDocument};
use crate::error::CliResult;
use crate::eval::{evaluate, Env};

pub const CATALOG: &[(&str, &str)] = &[
    ("cyclic", include_str!("../catalog/cyclic.ring")),
    ("trivial", include_str!("../catalog/trivial.ring")),
    ("matrix", include_str!("../catalog/matrix.ring")),
    ("sums", include_str!("../catalog/sums.ring")),
    ("rings", include_str!("../catalog/rings.ring")),
];

pub struct CatalogEntry {
    pub name: &'static str,
    pub doc: SpecDocument,
    pub env: Env,
}

pub fn load_catalog(limits: &Limits) -> CliResult<Vec<CatalogEntry>> {
    CATALOG
        .iter()
        .map(|&(name, text)| {
            let doc = parse_spec(text)?;
            let env = evaluate(&doc, limits)?;
            Ok(CatalogEntry { name, doc, env })
        })
        .collect()
}
