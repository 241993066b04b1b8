//! Plain-text configuration: `key = value` files for run defaults, warp
//! definition files, link spectra, and boundary Fourier data. Flags always
//! override file values.

use anyhow::{anyhow, bail, Context, Result};
use conelab_core::spectral::{BoundaryData, FourierCoeff};
use conelab_core::warp::WarpFn;
use std::collections::BTreeMap;
use std::path::Path;

/// `key = value` pairs; later duplicates win. Lines starting with `#` and
/// blank lines are ignored.
pub fn load_key_values(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{}:{}: expected key = value", path.display(), lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Warp definition file: blocks of `key = value` separated by blank lines,
/// with fields `name`, `expr`, and optional `beta`, `domain_floor`.
pub fn load_warp_file(path: &Path) -> Result<Vec<WarpFn>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading warp file {}", path.display()))?;
    let mut warps = Vec::new();
    for (i, block) in text.split("\n\n").enumerate() {
        let mut fields = BTreeMap::new();
        for line in block.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("{} block {}: expected key = value", path.display(), i + 1))?;
            fields.insert(key.trim().to_string(), value.trim().to_string());
        }
        if fields.is_empty() {
            continue;
        }
        let name = fields
            .get("name")
            .ok_or_else(|| anyhow!("{} block {}: missing 'name'", path.display(), i + 1))?;
        let expr = fields
            .get("expr")
            .ok_or_else(|| anyhow!("{} block {}: missing 'expr'", path.display(), i + 1))?;
        let beta = fields.get("beta").map(|v| v.parse::<f64>()).transpose()?;
        let floor = fields.get("domain_floor").map(|v| v.parse::<f64>()).transpose()?;
        let warp = WarpFn::parse(name, expr, beta, floor)
            .map_err(|e| anyhow!("{} block {} ({name}): {e}", path.display(), i + 1))?;
        warps.push(warp);
    }
    if warps.is_empty() {
        bail!("{}: no warp definitions found", path.display());
    }
    Ok(warps)
}

/// Link spectrum file: a `volume` line followed by `lambda_sq multiplicity`
/// rows in increasing order.
pub fn load_link_file(path: &Path) -> Result<(f64, Vec<(f64, u64)>)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading link file {}", path.display()))?;
    let mut volume = None;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("volume") {
            volume = Some(rest.trim().parse::<f64>().with_context(|| {
                format!("{}:{}: bad volume", path.display(), lineno + 1)
            })?);
            continue;
        }
        let mut parts = line.split_whitespace();
        let lsq: f64 = parts
            .next()
            .ok_or_else(|| anyhow!("{}:{}: empty row", path.display(), lineno + 1))?
            .parse()?;
        let mult: u64 = parts
            .next()
            .ok_or_else(|| anyhow!("{}:{}: missing multiplicity", path.display(), lineno + 1))?
            .parse()?;
        rows.push((lsq, mult));
    }
    let volume =
        volume.ok_or_else(|| anyhow!("{}: missing 'volume' line", path.display()))?;
    if rows.is_empty() {
        bail!("{}: no eigenvalue rows", path.display());
    }
    Ok((volume, rows))
}

/// Boundary Fourier data: rows `m a b`; the m = 0 row carries the mean in
/// the `a` column.
pub fn load_boundary_file(path: &Path, radius: f64) -> Result<BoundaryData> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading boundary file {}", path.display()))?;
    let mut a0 = 0.0;
    let mut coeffs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let m: u32 = parts
            .next()
            .ok_or_else(|| anyhow!("{}:{}: empty row", path.display(), lineno + 1))?
            .parse()?;
        let a: f64 = parts
            .next()
            .ok_or_else(|| anyhow!("{}:{}: missing a", path.display(), lineno + 1))?
            .parse()?;
        let b: f64 = parts.next().map(|v| v.parse::<f64>()).transpose()?.unwrap_or(0.0);
        if m == 0 {
            a0 = a;
        } else {
            coeffs.push(FourierCoeff { m, a, b });
        }
    }
    coeffs.sort_by_key(|c| c.m);
    BoundaryData::new(radius, a0, coeffs).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Resolve a warp from `--warp NAME` / `--expr TEXT` / `--warp-file PATH`,
/// in that precedence order (the named lookup searches the file first, then
/// the built-in catalog).
pub fn resolve_warp(
    warp: Option<&str>,
    expr: Option<&str>,
    warp_file: Option<&Path>,
) -> Result<WarpFn> {
    if let Some(text) = expr {
        return WarpFn::parse("cli_expr", text, None, None)
            .map_err(|e| anyhow!("--expr: {e}"));
    }
    let name = warp.unwrap_or("euclidean");
    if let Some(path) = warp_file {
        let defs = load_warp_file(path)?;
        if let Some(w) = defs.into_iter().find(|w| w.name() == name) {
            return Ok(w);
        }
    }
    conelab_core::warp::catalog_lookup(name)
        .ok_or_else(|| anyhow!("unknown warp '{name}' (try `conelab catalog`)"))
}
