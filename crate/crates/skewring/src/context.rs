//! TOML context files describing `K[G, Θ, α]`.
//!
//! ```toml
//! field = { p = 3, m = 2, poly = [2, 2, 1] }
//!
//! [group]
//! family = "dihedral_ab"
//! order = 20
//!
//! [theta]
//! kind = "kernel"
//! kernel = ["a"]
//! exp = 1
//!
//! [cocycle]
//! kind = "file"
//! path = "d20f9_alpha.txt"
//! ```

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use skewring_core::{Cocycle, CocycleReport, Field, Group, GroupFamily, RingCtx, ThetaMap};

use crate::files::{self, FormatError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub poly: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic { order: usize },
    /// Enumerated `x^i y^j` (i fastest).
    Dihedral { order: usize },
    /// Enumerated `a^i b^j` at index `2i + j`.
    DihedralAb { order: usize },
    Alt4,
    Semidirect { m: usize, k: usize, r: usize },
    Product { factors: Vec<GroupSpec> },
    Explicit { table: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThetaSpec {
    #[default]
    Trivial,
    /// Frobenius exponent per group element, in enumeration order.
    Exps { exps: Vec<u32> },
    /// Frobenius^exp on every involution.
    Involutions { exp: u32 },
    /// Kernel generated by the listed labels; the generating coset acts as Frobenius^exp.
    Kernel { kernel: Vec<String>, exp: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CocycleSpec {
    #[default]
    Trivial,
    /// `α_λ` on the canonical cyclic group.
    Constacyclic { lambda: String },
    Table { rows: Vec<Vec<String>> },
    /// A cocycle table file, relative to the context file.
    File { path: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextFile {
    pub field: FieldSpec,
    pub group: GroupSpec,
    #[serde(default)]
    pub theta: ThetaSpec,
    #[serde(default)]
    pub cocycle: CocycleSpec,
}

/// A parsed context whose cocycle has not been validated yet.
#[derive(Debug, Clone)]
pub struct Unchecked {
    pub field: Arc<Field>,
    pub group: Arc<Group>,
    pub theta: ThetaMap,
    pub alpha: Cocycle,
}

impl Unchecked {
    pub fn validate(&self) -> CocycleReport {
        self.alpha.validate(&self.field, &self.group, &self.theta)
    }

    pub fn into_ctx(self) -> Result<Arc<RingCtx>, skewring_core::Error> {
        RingCtx::new(self.field, self.group, self.theta, self.alpha)
    }
}

fn group_family(g: &GroupSpec) -> GroupFamily {
    match g {
        GroupSpec::Cyclic { order } => GroupFamily::Cyclic(*order),
        GroupSpec::Dihedral { order } => GroupFamily::Dihedral(*order),
        GroupSpec::DihedralAb { order } => GroupFamily::DihedralAb(*order),
        GroupSpec::Alt4 => GroupFamily::Alt4,
        GroupSpec::Semidirect { m, k, r } => GroupFamily::Semidirect { m: *m, k: *k, r: *r },
        GroupSpec::Product { factors } => {
            let mut it = factors.iter().rev().map(group_family);
            let last = it.next().unwrap_or(GroupFamily::Cyclic(1));
            it.fold(last, |acc, f| GroupFamily::Product(Box::new(f), Box::new(acc)))
        }
        GroupSpec::Explicit { table } => GroupFamily::Explicit(table.clone()),
    }
}

/// 1-based line of the first line that opens `section` or assigns `key`.
fn line_of(text: &str, section: &str) -> Option<usize> {
    let header = format!("[{section}]");
    text.lines().position(|l| {
        let t = l.trim_start();
        t.starts_with(&header) || t.strip_prefix(section).is_some_and(|r| r.trim_start().starts_with('='))
    })
    .map(|i| i + 1)
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

impl ContextFile {
    pub fn parse(path: &Path, text: &str) -> Result<ContextFile, FormatError> {
        toml::from_str(text).map_err(|e| {
            let (line, col) = e.span().map_or((0, 0), |s| line_col(text, s.start));
            FormatError::Syntax { path: path.to_path_buf(), line, col, message: e.message().to_string() }
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("context serializes")
    }

    /// Builds the field, group, Θ and α; `base` resolves relative cocycle paths.
    pub fn resolve(&self, path: &Path, text: &str, base: &Path) -> Result<Unchecked, FormatError> {
        let located = |section: &str, key: &str, e: skewring_core::Error| FormatError::Invalid {
            path: path.to_path_buf(),
            line: line_of(text, section),
            key: key.to_string(),
            message: e.to_string(),
        };
        let FieldSpec { p, m, poly } = &self.field;
        let field = Arc::new(Field::new(*p, *m, poly).map_err(|e| located("field", "field", e))?);
        let group = Arc::new(Group::make(group_family(&self.group)).map_err(|e| located("group", "group", e))?);
        let theta = match &self.theta {
            ThetaSpec::Trivial => ThetaMap::trivial(&field, &group),
            ThetaSpec::Exps { exps } => ThetaMap::new(&field, &group, exps.clone()).map_err(|e| located("theta", "theta.exps", e))?,
            ThetaSpec::Involutions { exp } => {
                ThetaMap::involutions_frobenius(&field, &group, *exp).map_err(|e| located("theta", "theta.exp", e))?
            }
            ThetaSpec::Kernel { kernel, exp } => {
                let gens = kernel
                    .iter()
                    .map(|l| group.index_of(l))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| located("theta", "theta.kernel", e))?;
                ThetaMap::kernel_power(&field, &group, &gens, *exp).map_err(|e| located("theta", "theta.kernel", e))?
            }
        };
        let n = group.order();
        let alpha = match &self.cocycle {
            CocycleSpec::Trivial => Cocycle::trivial(n),
            CocycleSpec::Constacyclic { lambda } => {
                let l = field.parse(lambda).map_err(|e| located("cocycle", "cocycle.lambda", e))?;
                Cocycle::constacyclic(n, l).map_err(|e| located("cocycle", "cocycle.lambda", e))?
            }
            CocycleSpec::Table { rows } => {
                let parsed = rows
                    .iter()
                    .map(|r| r.iter().map(|t| field.parse(t)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| located("cocycle", "cocycle.rows", e))?;
                let alpha = Cocycle::from_rows(parsed).map_err(|e| located("cocycle", "cocycle.rows", e))?;
                check_order(&alpha, n).map_err(|e| located("cocycle", "cocycle.rows", e))?;
                alpha
            }
            CocycleSpec::File { path: rel } => {
                let full: PathBuf = base.join(rel);
                let alpha = files::read_cocycle(&full, &field)?;
                check_order(&alpha, n).map_err(|e| located("cocycle", "cocycle.path", e))?;
                alpha
            }
        };
        Ok(Unchecked { field, group, theta, alpha })
    }
}

fn check_order(alpha: &Cocycle, n: usize) -> Result<(), skewring_core::Error> {
    if alpha.order() != n {
        return Err(skewring_core::Error::LengthMismatch { expected: n, got: alpha.order() });
    }
    Ok(())
}

/// Reads and resolves a context file without validating the cocycle.
pub fn load_unchecked(path: &Path) -> Result<Unchecked, FormatError> {
    let text = files::read_to_string(path)?;
    let file = ContextFile::parse(path, &text)?;
    let base = path.parent().unwrap_or(Path::new("."));
    file.resolve(path, &text, base)
}

/// Reads a context file into a validated ring.
pub fn load(path: &Path) -> Result<Arc<RingCtx>, FormatError> {
    let un = load_unchecked(path)?;
    un.into_ctx().map_err(|e| FormatError::Invalid { path: path.to_path_buf(), line: None, key: "cocycle".into(), message: e.to_string() })
}

/// Canonical JSON for a ring: sorted keys, field elements in their default
/// rendering, the group as its Cayley table.
pub fn canonical(ctx: &RingCtx) -> String {
    let f = ctx.field();
    let alpha: Vec<Vec<String>> = ctx.alpha().rows().iter().map(|r| r.iter().map(|&x| f.render(x)).collect()).collect();
    let value = serde_json::json!({
        "alpha": alpha,
        "field": { "m": f.m(), "p": f.p(), "poly": f.poly() },
        "group": ctx.group().table_rows(),
        "theta": ctx.theta().exps(),
    });
    serde_json::to_string(&value).expect("json serializes")
}

/// First 64 bits of SHA-256 over the canonical serialization, as hex.
pub fn fingerprint(ctx: &RingCtx) -> String {
    hex64(canonical(ctx).as_bytes())
}

pub(crate) fn hex64(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut word = [0u8; 8];
    word.copy_from_slice(&digest[..8]);
    format!("{:016x}", u64::from_be_bytes(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    const D6: &str = r#"
field = { p = 2, m = 2, poly = [1, 1, 1] }

[group]
family = "dihedral"
order = 6

[theta]
kind = "involutions"
exp = 1
"#;

    #[test]
    fn parses_hexacode_context() {
        let p = Path::new("hexa.toml");
        let file = ContextFile::parse(p, D6).unwrap();
        let ctx = file.resolve(p, D6, Path::new(".")).unwrap().into_ctx().unwrap();
        assert_eq!(*ctx, *skewring_core::catalog::hexacode_ctx().unwrap());
        let again = ContextFile::parse(p, &file.to_toml()).unwrap();
        assert_eq!(again, file);
    }

    #[test]
    fn errors_are_located() {
        let p = Path::new("bad.toml");
        let err = ContextFile::parse(p, "field = { p = 2, m = 2, poly = [1, 1, 1] }\n[group]\nfamily = 3\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 3, .. }), "{err}");
        let text = D6.replace("exp = 1", "exp = 1\n").replace("\"involutions\"", "\"kernel\"\nkernel = [\"z\"]");
        let file = ContextFile::parse(p, &text).unwrap();
        let err = file.resolve(p, &text, Path::new(".")).unwrap_err();
        match err {
            FormatError::Invalid { line, key, .. } => {
                assert_eq!(key, "theta.kernel");
                assert_eq!(line, Some(8));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn fingerprint_is_stable() {
        let ctx = skewring_core::catalog::hexacode_ctx().unwrap();
        assert_eq!(fingerprint(&ctx), fingerprint(&skewring_core::catalog::hexacode_ctx().unwrap()));
        assert_ne!(fingerprint(&ctx), fingerprint(&skewring_core::catalog::d6f9_ctx().unwrap()));
        assert_eq!(fingerprint(&ctx).len(), 16);
    }
}
