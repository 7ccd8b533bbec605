//! Rewrites `data/catalog_l{0,1,2}.json` from the reference classification.
//!
//! Run with `cargo run -p ssm-thom --example regenerate_catalogs`.

use std::path::PathBuf;

use ssm_thom::catalog::{classification, classified_up_to, Catalog};
use ssm_thom::unfolding::derive_entry;

/// Entries whose weights can be compared with independently published data.
const CROSS_CHECKED: &[(u32, &str)] = &[(0, "A1"), (0, "A2"), (0, "A3"), (0, "c2"), (1, "A1"), (1, "c2"), (1, "d1")];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    for ell in 0..=2u32 {
        let mut entries = Vec::new();
        for alg in classification(ell) {
            let mut entry = derive_entry(&alg.genotype(ell), ell, None)?;
            if entry.codim != alg.codim {
                return Err(format!("{} (ell {ell}): derived codim {}, expected {}", alg.name, entry.codim, alg.codim).into());
            }
            entry.name = alg.name.clone();
            entry.presentation = alg.presentation();
            entry.provenance = if CROSS_CHECKED.contains(&(ell, alg.name.as_str())) {
                "derived; weights cross-checked against published prototype data".into()
            } else {
                "derived".into()
            };
            entries.push(entry);
        }
        let cat = Catalog { ell, max_codim: classified_up_to(ell).unwrap(), entries };
        cat.check()?;
        let path = dir.join(format!("catalog_l{ell}.json"));
        std::fs::write(&path, cat.to_json())?;
        println!("wrote {} ({} entries)", path.display(), cat.entries.len());
    }
    Ok(())
}
