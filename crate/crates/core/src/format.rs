//! The category presentation file format.
//!
//! Line-oriented UTF-8. Blank lines and `#` comments are ignored.
//!
//! ```text
//! field p=2 n=4
//! gen P
//! hom P P dim=2 basis=id_P x
//! comp x x = 0
//! comp id_P x = x
//! sigma gen P -> P
//! sigma hom x -> x
//! angles wrap-exact
//! ```
//!
//! `comp a b = combo` records the composite "a then b" (that is, `b ∘ a`);
//! omitted pairs default to zero. Basis names are global, so every `comp` and
//! `sigma hom` line is unambiguous. Missing `sigma` lines default to the
//! identity. The `angles` line selects the membership oracle: `split`,
//! `wrap-exact`, or `list` followed by explicit `seq … endseq` blocks whose
//! `map` lines carry flat block coordinates.
//!
//! Parsing then serializing is the identity on canonical files, and
//! serializing a parsed file canonicalizes it.

use crate::addcat::{
    CategoryBuilder, Morphism, ObjectExpr, PresentedCategory, Shift, SuspensionFunctor,
};
use crate::angles::{
    AngleClass, DynClass, EnumeratedClass, NSequence, SplitClass, Structure, WrapExactClass,
};
use crate::ffmat::FpMatrix;
use crate::report::Budget;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("validation: {0}")]
    Validation(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// Which membership oracle a file selects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSelector {
    Split,
    WrapExact,
    List(Vec<RawSequence>),
}

/// A sequence as written in a file: object generator-name lists and flat
/// coordinate rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSequence {
    pub objects: Vec<Vec<String>>,
    pub maps: Vec<Vec<u32>>,
}

/// Everything a category file describes.
#[derive(Debug, Clone)]
pub struct ParsedFile {
    pub p: u32,
    pub n: usize,
    pub cat: PresentedCategory,
    pub suspension: SuspensionFunctor,
    pub selector: ClassSelector,
}

impl ParsedFile {
    pub fn structure(&self) -> Structure {
        Structure::new(self.cat.clone(), Shift::Strict(self.suspension.clone()), self.n)
            .expect("parsed n is at least 3")
    }

    /// Instantiates the selected oracle against the structure.
    pub fn class(&self, st: &Structure, budget: &Budget) -> Result<DynClass, FormatError> {
        match &self.selector {
            ClassSelector::Split => {
                SplitClass::check_shape(st).map_err(FormatError::Validation)?;
                Ok(Arc::new(SplitClass))
            }
            ClassSelector::WrapExact => Ok(Arc::new(WrapExactClass::new(st, *budget))),
            ClassSelector::List(raw) => {
                let members = raw
                    .iter()
                    .map(|r| raw_to_sequence(st, r))
                    .collect::<Result<Vec<_>, _>>()?;
                for (i, m) in members.iter().enumerate() {
                    m.validate(st).map_err(|e| {
                        FormatError::Validation(format!("listed sequence {}: {}", i, e))
                    })?;
                }
                Ok(Arc::new(EnumeratedClass { members, iso_budget: budget.cap_solutions }))
            }
        }
    }
}

fn raw_to_sequence(st: &Structure, raw: &RawSequence) -> Result<NSequence, FormatError> {
    let cat = &st.cat;
    let mut objects = Vec::with_capacity(raw.objects.len());
    for names in &raw.objects {
        let mut summands = Vec::new();
        for name in names {
            let g = cat
                .gen_index(name)
                .ok_or_else(|| FormatError::Validation(format!("unknown generator {}", name)))?;
            summands.push(g);
        }
        objects.push(ObjectExpr::from_summands(summands));
    }
    let n = st.n;
    if objects.len() != n || raw.maps.len() != n {
        return Err(FormatError::Validation(format!(
            "listed sequence must have {} objects and maps",
            n
        )));
    }
    let mut maps = Vec::with_capacity(n);
    for (i, coords) in raw.maps.iter().enumerate() {
        let dom = objects[i].clone();
        let cod = if i + 1 < n { objects[i + 1].clone() } else { st.fwd_obj(&objects[0]) };
        let dim = crate::addcat::hom_dim_obj(cat, &dom, &cod);
        if coords.len() != dim {
            return Err(FormatError::Validation(format!(
                "map {} has {} coordinates, expected {}",
                i,
                coords.len(),
                dim
            )));
        }
        maps.push(Morphism::from_flat(cat, &dom, &cod, coords));
    }
    Ok(NSequence::new(objects, maps))
}

struct BasisRef {
    src: usize,
    tgt: usize,
    idx: usize,
}

/// Parses a category presentation file. Errors carry line numbers for syntax
/// problems; structural law violations name the failing law and elements.
pub fn parse_category_file(text: &str) -> Result<ParsedFile, FormatError> {
    let mut p: Option<u32> = None;
    let mut n: Option<usize> = None;
    let mut gens: Vec<String> = Vec::new();
    let mut hom_decls: Vec<(usize, usize, Vec<String>)> = Vec::new();
    let mut comp_lines: Vec<(usize, String, String, String)> = Vec::new();
    let mut sigma_gen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut sigma_hom: Vec<(usize, String, String)> = Vec::new();
    let mut selector: Option<ClassSelector> = None;
    let mut list_sequences: Vec<RawSequence> = Vec::new();
    let mut current_seq: Option<RawSequence> = None;

    let gen_index = |gens: &[String], name: &str, line: usize| -> Result<usize, FormatError> {
        gens.iter()
            .position(|g| g == name)
            .ok_or_else(|| syntax(line, format!("unknown generator {}", name)))
    };

    for (lineno, rawline) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = rawline.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if let Some(seq) = current_seq.as_mut() {
            match tokens[0] {
                "obj" => {
                    seq.objects.push(tokens[1..].iter().map(|s| s.to_string()).collect());
                    continue;
                }
                "map" => {
                    let coords = tokens[1..]
                        .iter()
                        .map(|t| {
                            t.parse::<u32>().map_err(|_| syntax(line, "map coordinates must be integers"))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    seq.maps.push(coords);
                    continue;
                }
                "endseq" => {
                    list_sequences.push(current_seq.take().unwrap());
                    continue;
                }
                other => return Err(syntax(line, format!("unexpected token {} inside seq block", other))),
            }
        }
        match tokens[0] {
            "field" => {
                for tok in &tokens[1..] {
                    if let Some(v) = tok.strip_prefix("p=") {
                        p = Some(v.parse().map_err(|_| syntax(line, "bad modulus"))?);
                    } else if let Some(v) = tok.strip_prefix("n=") {
                        n = Some(v.parse().map_err(|_| syntax(line, "bad n"))?);
                    } else {
                        return Err(syntax(line, format!("unknown field token {}", tok)));
                    }
                }
            }
            "n" => {
                // tolerate a standalone `n = 4` or `n=4` line
                let joined = tokens.join("");
                let v = joined
                    .strip_prefix("n=")
                    .or_else(|| joined.strip_prefix("n"))
                    .unwrap_or("")
                    .trim_start_matches('=');
                n = Some(v.parse().map_err(|_| syntax(line, "bad n"))?);
            }
            "gen" => {
                if tokens.len() != 2 {
                    return Err(syntax(line, "gen takes one name"));
                }
                if gens.iter().any(|g| g == tokens[1]) {
                    return Err(syntax(line, format!("duplicate generator {}", tokens[1])));
                }
                gens.push(tokens[1].to_string());
            }
            "hom" => {
                if tokens.len() < 4 {
                    return Err(syntax(line, "hom needs source, target, dim=, basis="));
                }
                let src = gen_index(&gens, tokens[1], line)?;
                let tgt = gen_index(&gens, tokens[2], line)?;
                let mut dim: Option<usize> = None;
                let mut basis: Vec<String> = Vec::new();
                for tok in &tokens[3..] {
                    if let Some(v) = tok.strip_prefix("dim=") {
                        dim = Some(v.parse().map_err(|_| syntax(line, "bad dim"))?);
                    } else if let Some(v) = tok.strip_prefix("basis=") {
                        if !v.is_empty() {
                            basis.push(v.to_string());
                        }
                    } else {
                        basis.push(tok.to_string());
                    }
                }
                let dim = dim.ok_or_else(|| syntax(line, "hom needs dim="))?;
                if basis.len() != dim {
                    return Err(syntax(line, format!("hom declares dim={} but {} basis names", dim, basis.len())));
                }
                hom_decls.push((src, tgt, basis));
            }
            "comp" => {
                let eq = tokens.iter().position(|t| *t == "=").ok_or_else(|| syntax(line, "comp needs ="))?;
                if eq != 3 || tokens.len() < 5 {
                    return Err(syntax(line, "comp syntax: comp <b1> <b2> = <combo>"));
                }
                let combo = tokens[4..].join(" ");
                comp_lines.push((line, tokens[1].to_string(), tokens[2].to_string(), combo));
            }
            "sigma" => match tokens.get(1).copied() {
                Some("gen") => {
                    if tokens.len() != 5 || tokens[3] != "->" {
                        return Err(syntax(line, "sigma gen syntax: sigma gen <g> -> <h>"));
                    }
                    let g = gen_index(&gens, tokens[2], line)?;
                    let h = gen_index(&gens, tokens[4], line)?;
                    sigma_gen.insert(g, h);
                }
                Some("hom") => {
                    if tokens.len() < 5 || tokens[3] != "->" {
                        return Err(syntax(line, "sigma hom syntax: sigma hom <basis> -> <combo>"));
                    }
                    sigma_hom.push((line, tokens[2].to_string(), tokens[4..].join(" ")));
                }
                _ => return Err(syntax(line, "sigma needs gen or hom")),
            },
            "angles" => {
                match tokens.get(1).copied() {
                    Some("split") => selector = Some(ClassSelector::Split),
                    Some("wrap-exact") => selector = Some(ClassSelector::WrapExact),
                    Some("list") => selector = Some(ClassSelector::List(Vec::new())),
                    other => {
                        return Err(syntax(line, format!("unknown angle oracle {:?}", other)));
                    }
                }
            }
            "seq" => {
                if !matches!(selector, Some(ClassSelector::List(_))) {
                    return Err(syntax(line, "seq blocks require `angles list`"));
                }
                current_seq = Some(RawSequence { objects: Vec::new(), maps: Vec::new() });
            }
            other => return Err(syntax(line, format!("unknown directive {}", other))),
        }
    }
    if current_seq.is_some() {
        return Err(FormatError::Validation("unterminated seq block".into()));
    }
    let p = p.ok_or_else(|| FormatError::Validation("missing field p=".into()))?;
    let n = n.ok_or_else(|| FormatError::Validation("missing n=".into()))?;
    if n < 3 {
        return Err(FormatError::Validation("n must be at least 3".into()));
    }

    // assemble the presentation
    let mut builder = CategoryBuilder::new(p);
    for g in &gens {
        builder.add_gen(g);
    }
    let mut basis_lookup: BTreeMap<String, BasisRef> = BTreeMap::new();
    let mut dims: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (src, tgt, basis) in &hom_decls {
        let names: Vec<&str> = basis.iter().map(|s| s.as_str()).collect();
        builder.set_hom(*src, *tgt, &names);
        dims.insert((*src, *tgt), basis.len());
        for (idx, name) in basis.iter().enumerate() {
            if basis_lookup.contains_key(name) {
                return Err(FormatError::Validation(format!(
                    "basis name {} is not globally unique",
                    name
                )));
            }
            basis_lookup.insert(name.clone(), BasisRef { src: *src, tgt: *tgt, idx });
        }
    }
    let dim_of = |g: usize, h: usize| dims.get(&(g, h)).copied().unwrap_or(0);
    let parse_combo = |line: usize,
                       combo: &str,
                       expect: (usize, usize)|
     -> Result<Vec<u32>, FormatError> {
        let mut coords = vec![0u32; dim_of(expect.0, expect.1)];
        let trimmed = combo.trim();
        if trimmed == "0" {
            return Ok(coords);
        }
        for term in trimmed.split('+') {
            let term = term.trim();
            let (coeff, name) = match term.split_once('*') {
                Some((c, b)) => (
                    c.trim().parse::<u32>().map_err(|_| syntax(line, "bad coefficient"))?,
                    b.trim(),
                ),
                None => (1, term),
            };
            let bref = basis_lookup
                .get(name)
                .ok_or_else(|| syntax(line, format!("unknown basis element {}", name)))?;
            if (bref.src, bref.tgt) != expect {
                return Err(syntax(
                    line,
                    format!("basis element {} lives in the wrong Hom space", name),
                ));
            }
            coords[bref.idx] = (coords[bref.idx] + coeff) % p;
        }
        Ok(coords)
    };
    // identities: by convention the basis element named id_<gen> (or the
    // declared unit via an `id` combo) — we take the literal basis element
    // whose name is id_<gen> when present, else require dim 0
    for (g, name) in gens.iter().enumerate() {
        let id_name = format!("id_{}", name);
        if let Some(bref) = basis_lookup.get(&id_name) {
            if (bref.src, bref.tgt) != (g, g) {
                return Err(FormatError::Validation(format!(
                    "{} must live in Hom({},{})",
                    id_name, name, name
                )));
            }
            let mut coords = vec![0u32; dim_of(g, g)];
            coords[bref.idx] = 1;
            builder.set_id(g, &coords);
        } else if dim_of(g, g) == 0 {
            builder.set_id(g, &[]);
        } else {
            return Err(FormatError::Validation(format!(
                "no identity basis element id_{} declared",
                name
            )));
        }
    }
    // unit composites default to the unit law; explicit lines override and
    // any contradiction surfaces as a named validation error below
    for (g, h) in dims.keys().copied().collect::<Vec<_>>() {
        for idx in 0..dim_of(g, h) {
            let mut coords = vec![0u32; dim_of(g, h)];
            coords[idx] = 1;
            if let Some(id_ref) = basis_lookup.get(&format!("id_{}", gens[g])) {
                builder.set_comp(g, g, h, id_ref.idx, idx, &coords);
            }
            if let Some(id_ref) = basis_lookup.get(&format!("id_{}", gens[h])) {
                builder.set_comp(g, h, h, idx, id_ref.idx, &coords);
            }
        }
    }
    for (line, b1, b2, combo) in &comp_lines {
        let r1 = basis_lookup
            .get(b1)
            .ok_or_else(|| syntax(*line, format!("unknown basis element {}", b1)))?;
        let r2 = basis_lookup
            .get(b2)
            .ok_or_else(|| syntax(*line, format!("unknown basis element {}", b2)))?;
        if r1.tgt != r2.src {
            return Err(syntax(*line, format!("{} and {} are not composable", b1, b2)));
        }
        let coords = parse_combo(*line, combo, (r1.src, r2.tgt))?;
        builder.set_comp(r1.src, r1.tgt, r2.tgt, r1.idx, r2.idx, &coords);
    }
    let cat = builder.build().map_err(|e| {
        FormatError::Validation(format!("associativity/unit consistency: {}", e))
    })?;
    // suspension: defaults are the identity permutation and coordinatewise
    // identity maps
    let perm: Vec<usize> = (0..gens.len()).map(|g| sigma_gen.get(&g).copied().unwrap_or(g)).collect();
    let mut maps: Vec<Vec<FpMatrix>> = (0..gens.len())
        .map(|g| {
            (0..gens.len())
                .map(|h| {
                    let rows = cat.hom_dim(perm[g], perm[h]);
                    let cols = cat.hom_dim(g, h);
                    if rows == cols {
                        FpMatrix::identity(p, rows)
                    } else {
                        FpMatrix::zeros(p, rows, cols)
                    }
                })
                .collect()
        })
        .collect();
    for (line, basis_name, combo) in &sigma_hom {
        let bref = basis_lookup
            .get(basis_name)
            .ok_or_else(|| syntax(*line, format!("unknown basis element {}", basis_name)))?;
        let target_pair = (perm[bref.src], perm[bref.tgt]);
        let coords = parse_combo(*line, combo, target_pair)?;
        let m = &mut maps[bref.src][bref.tgt];
        for (row, &c) in coords.iter().enumerate() {
            m.set(row, bref.idx, c);
        }
    }
    let suspension = SuspensionFunctor::new(&cat, perm, maps)
        .map_err(|e| FormatError::Validation(format!("suspension: {}", e)))?;
    let selector = selector.ok_or_else(|| FormatError::Validation("missing angles line".into()))?;
    let selector = match selector {
        ClassSelector::List(_) => ClassSelector::List(list_sequences),
        other => other,
    };
    Ok(ParsedFile { p, n, cat, suspension, selector })
}

fn combo_string(cat: &PresentedCategory, g: usize, h: usize, coords: &[u32]) -> String {
    let terms: Vec<String> = coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let name = cat.basis_name(g, h, i);
            if c == 1 {
                name.to_string()
            } else {
                format!("{}*{}", c, name)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Canonical text for a structure and oracle selection. Parsing the output
/// reproduces the input data exactly.
pub fn serialize_category(st: &Structure, selector: &ClassSelector) -> String {
    let cat = &st.cat;
    let mut out = String::new();
    out.push_str(&format!("field p={} n={}\n", cat.modulus(), st.n));
    for g in 0..cat.gen_count() {
        out.push_str(&format!("gen {}\n", cat.gen_name(g)));
    }
    for g in 0..cat.gen_count() {
        for h in 0..cat.gen_count() {
            let dim = cat.hom_dim(g, h);
            if dim == 0 {
                continue;
            }
            let names: Vec<&str> = (0..dim).map(|i| cat.basis_name(g, h, i)).collect();
            out.push_str(&format!(
                "hom {} {} dim={} basis={}\n",
                cat.gen_name(g),
                cat.gen_name(h),
                dim,
                names.join(" ")
            ));
        }
    }
    for a in 0..cat.gen_count() {
        for b in 0..cat.gen_count() {
            for c in 0..cat.gen_count() {
                for i in 0..cat.hom_dim(a, b) {
                    for j in 0..cat.hom_dim(b, c) {
                        let coords = cat.compose_basis(a, b, c, j, i);
                        if coords.iter().all(|&x| x == 0) {
                            continue;
                        }
                        // skip unit composites, the parser restores them
                        let id_a = cat.id_coords(a);
                        let id_b = cat.id_coords(b);
                        let is_left_unit = a == b
                            && id_a.len() > i
                            && id_a[i] == 1
                            && id_a.iter().enumerate().all(|(k, &v)| (k == i) == (v == 1));
                        let is_right_unit = b == c
                            && id_b.len() > j
                            && id_b[j] == 1
                            && id_b.iter().enumerate().all(|(k, &v)| (k == j) == (v == 1));
                        if is_left_unit || is_right_unit {
                            continue;
                        }
                        out.push_str(&format!(
                            "comp {} {} = {}\n",
                            cat.basis_name(a, b, i),
                            cat.basis_name(b, c, j),
                            combo_string(cat, a, c, coords)
                        ));
                    }
                }
            }
        }
    }
    if let Shift::Strict(sus) = &st.shift {
        for g in 0..cat.gen_count() {
            if sus.gen_image(g) != g {
                out.push_str(&format!(
                    "sigma gen {} -> {}\n",
                    cat.gen_name(g),
                    cat.gen_name(sus.gen_image(g))
                ));
            }
        }
        for g in 0..cat.gen_count() {
            for h in 0..cat.gen_count() {
                let m = sus.hom_map(g, h);
                for i in 0..cat.hom_dim(g, h) {
                    let col = m.col(i);
                    let mut ident = vec![0u32; col.len()];
                    if i < ident.len() {
                        ident[i] = 1;
                    }
                    if col == ident {
                        continue;
                    }
                    out.push_str(&format!(
                        "sigma hom {} -> {}\n",
                        cat.basis_name(g, h, i),
                        combo_string(cat, sus.gen_image(g), sus.gen_image(h), &col)
                    ));
                }
            }
        }
    }
    match selector {
        ClassSelector::Split => out.push_str("angles split\n"),
        ClassSelector::WrapExact => out.push_str("angles wrap-exact\n"),
        ClassSelector::List(seqs) => {
            out.push_str("angles list\n");
            for seq in seqs {
                out.push_str("seq\n");
                for obj in &seq.objects {
                    if obj.is_empty() {
                        out.push_str("obj\n");
                    } else {
                        out.push_str(&format!("obj {}\n", obj.join(" ")));
                    }
                }
                for coords in &seq.maps {
                    if coords.is_empty() {
                        out.push_str("map\n");
                    } else {
                        let strs: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                        out.push_str(&format!("map {}\n", strs.join(" ")));
                    }
                }
                out.push_str("endseq\n");
            }
        }
    }
    out
}

/// File-side view of an in-memory sequence, for exports.
pub fn sequence_to_raw(st: &Structure, seq: &NSequence) -> RawSequence {
    let cat = &st.cat;
    RawSequence {
        objects: seq
            .objects
            .iter()
            .map(|o| o.iter().map(|g| cat.gen_name(g).to_string()).collect())
            .collect(),
        maps: seq.maps.iter().map(|m| m.to_flat()).collect(),
    }
}

/// Validates a parsed file the way corpus entries are validated: laws have
/// already been checked when the presentation was built; this adds the
/// oracle screen.
pub fn validate_parsed(parsed: &ParsedFile, budget: &Budget) -> Result<(Structure, DynClass), FormatError> {
    let st = parsed.structure();
    let class = parsed.class(&st, budget)?;
    crate::angles::screen_class(&st, class.as_ref(), budget)
        .map_err(FormatError::Validation)?;
    Ok((st, class))
}

/// Reconstructs a selector for serialization from a live class (used when
/// exporting corpus entries).
pub fn selector_for(class: &dyn AngleClass, st: &Structure, budget: &Budget) -> ClassSelector {
    match class.name() {
        "split" => ClassSelector::Split,
        "wrap-exact" => ClassSelector::WrapExact,
        _ => {
            let (members, _) = class.enumerate(st, budget);
            ClassSelector::List(members.iter().map(|m| sequence_to_raw(st, m)).collect())
        }
    }
}
