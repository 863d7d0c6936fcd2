//! The line-based workbench input format:
//!
//! ```text
//! # comment
//! ring 6 6
//! module 6:1 6:2
//! sub gen (2,0) (0,3)
//! ```
//!
//! `ring` gives the moduli of Z/n1 x ... x Z/nk. `module` gives cyclic
//! summands as `<order>:<ring coordinate>` (1-based). `sub gen` declares a
//! submodule by generators written as residue tuples over the module
//! summands; a bare integer is accepted for single-summand modules.

use submod_core::module::{ModElem, Module, Submodule};
use submod_core::ring::RingSpec;
use submod_core::{Error, Result};

pub struct WorkbenchInput {
    pub module: Module,
    pub subs: Vec<Submodule>,
}

fn parse_u32(tok: &str, what: &str) -> Result<u32> {
    tok.parse()
        .map_err(|_| Error::input(format!("bad {what} {tok:?}")))
}

/// Parse a generator token into an element code of `module`.
fn parse_elem(module: &Module, tok: &str) -> Result<ModElem> {
    let orders = module
        .direct_shape()
        .map(|(o, _)| o.to_vec())
        .ok_or_else(|| Error::input("sub gen requires a directly defined module"))?;
    let inner = tok
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(tok);
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != orders.len() {
        return Err(Error::input(format!(
            "element {tok:?} has {} coordinates, module has {}",
            parts.len(),
            orders.len()
        )));
    }
    let mut code = 0usize;
    for (p, &d) in parts.iter().zip(&orders) {
        let v: i64 = p
            .parse()
            .map_err(|_| Error::input(format!("bad residue {p:?} in {tok:?}")))?;
        let d = d as i64;
        code = code * d as usize + v.rem_euclid(d) as usize;
    }
    Ok(ModElem(code))
}

pub fn parse_input(text: &str) -> Result<WorkbenchInput> {
    let mut ring: Option<RingSpec> = None;
    let mut module: Option<Module> = None;
    let mut subs: Vec<Submodule> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap();
        let at = |msg: String| Error::input(format!("line {}: {}", lineno + 1, msg));
        match head {
            "ring" => {
                let moduli: Vec<u32> = toks
                    .map(|t| parse_u32(t, "modulus"))
                    .collect::<Result<_>>()?;
                ring = Some(RingSpec::new(&moduli)?);
            }
            "module" => {
                let ring = ring
                    .clone()
                    .ok_or_else(|| at("module line before ring line".into()))?;
                let mut orders = Vec::new();
                let mut coords = Vec::new();
                for t in toks {
                    let (d, c) = t
                        .split_once(':')
                        .ok_or_else(|| at(format!("summand {t:?} is not <order>:<coord>")))?;
                    orders.push(parse_u32(d, "summand order")?);
                    coords.push(parse_u32(c, "ring coordinate")?);
                }
                module = Some(Module::direct(ring, &orders, &coords)?);
            }
            "sub" => {
                let m = module
                    .as_ref()
                    .ok_or_else(|| at("sub line before module line".into()))?;
                let mut toks = toks;
                match toks.next() {
                    Some("gen") => {}
                    _ => return Err(at("expected `sub gen <elem> ...`".into())),
                }
                let gens: Vec<ModElem> = toks
                    .map(|t| parse_elem(m, t).map_err(|e| at(e.to_string())))
                    .collect::<Result<_>>()?;
                subs.push(m.submodule_generate(&gens));
            }
            _ => return Err(at(format!("unknown directive {head:?}"))),
        }
    }
    let module = module.ok_or_else(|| Error::input("input has no module definition"))?;
    Ok(WorkbenchInput { module, subs })
}
