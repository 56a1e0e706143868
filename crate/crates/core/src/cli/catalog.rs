//! Named example cones, built in or loaded from a directory of documents.

use std::fs;
use std::path::{Path, PathBuf};

use super::document::{parse_documents, ConeDocument};

pub const CATALOG_ENV: &str = "CONETORIC_CATALOG";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub document: ConeDocument,
    pub description: String,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        self.document.name.as_deref().unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

fn entry(document: ConeDocument, description: &str) -> CatalogEntry {
    CatalogEntry {
        document,
        description: description.to_string(),
    }
}

fn orthant(n: usize) -> ConeDocument {
    let units: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let refs: Vec<&[i64]> = units.iter().map(Vec::as_slice).collect();
    ConeDocument::from_normals(&format!("orthant{n}"), n, &refs)
}

impl Catalog {
    pub fn builtin() -> Catalog {
        let mut entries = Vec::new();
        for n in 2..=6 {
            entries.push(entry(orthant(n), &format!("positive orthant; the sphere S^{}", 2 * n - 1)));
        }
        entries.push(entry(
            ConeDocument::from_rays("wedge-rp3", 2, &[&[0, 1], &[2, -1]]),
            "wedge of determinant 2; real projective 3-space",
        ));
        entries.push(entry(
            ConeDocument::from_normals("s2xs1", 2, &[&[1, 0]]),
            "half-plane with edges (0,1), (0,-1); S^2 x S^1",
        ));
        entries.push(entry(
            ConeDocument::from_normals("nongood-rank3", 3, &[&[1, 0, 0], &[-1, 0, 2]]),
            "two normals spanning an index-2 sublattice on their common edge",
        ));
        entries.push(entry(
            ConeDocument::from_rays(
                "cone-over-square",
                3,
                &[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]],
            ),
            "cone over a lattice square; Z/2 on every edge",
        ));
        for n in 2..=4 {
            entries.push(entry(
                ConeDocument::from_normals(&format!("fullspace{n}"), n, &[]),
                "the whole space; no normals",
            ));
        }
        Catalog { entries }
    }

    /// Every `*.json` file in `dir`, in file-name order. Unnamed single
    /// documents take the file stem as their name.
    pub fn from_dir(dir: &Path) -> Result<Catalog, String> {
        let listing = fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        let mut paths: Vec<PathBuf> = listing
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let mut entries = Vec::new();
        for path in paths {
            let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let docs = parse_documents(&text)
                .map_err(|e| format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.message))?;
            let single = docs.len() == 1;
            for mut doc in docs {
                if doc.name.is_none() {
                    if !single {
                        return Err(format!(
                            "{}: documents in a catalog array need a name",
                            path.display()
                        ));
                    }
                    doc.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
                }
                entries.push(CatalogEntry {
                    document: doc,
                    description: String::new(),
                });
            }
        }
        Ok(Catalog { entries })
    }

    /// The directory named by `CONETORIC_CATALOG`, or the built-in set.
    pub fn load(override_dir: Option<&Path>) -> Result<Catalog, String> {
        match override_dir {
            Some(dir) => Catalog::from_dir(dir),
            None => Ok(Catalog::builtin()),
        }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name() == name)
    }

    /// Writes each entry to `dir/<name>.json`; returns the paths written.
    pub fn export(&self, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        for e in &self.entries {
            let path = dir.join(format!("{}.json", e.name()));
            let mut text = serde_json::to_string_pretty(&e.document).expect("documents serialize");
            text.push('\n');
            fs::write(&path, text)?;
            written.push(path);
        }
        Ok(written)
    }
}
