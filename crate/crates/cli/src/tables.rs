//! Parameter tables and the per-group classification tables.

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use sedf_core::catalog::{abelian_groups, nonabelian_groups};
use sedf_core::constructions::{
    construct_cyclotomic, construct_dihedral_sedf, construct_even_k, construct_pa_st,
    construct_paley,
};
use sedf_core::{
    classify_families, enumerate_admissible, is_equivalent, search_all, BlockFamily, FiniteGroup,
    ParamSet, Result,
};

use crate::report::{CellClass, CellRecord};

/// Every admissible nontrivial parameter set with `n ≤ max_n`.
pub fn parameter_rows(max_n: usize) -> Vec<ParamSet> {
    enumerate_admissible(max_n, false)
}

/// Known constructions for a parameter set, each tagged with its case label.
fn known_constructions(
    n: usize,
    m: usize,
    k: usize,
    lambda: usize,
) -> Vec<(&'static str, BlockFamily)> {
    let mut out = Vec::new();
    if m != 2 {
        return out;
    }
    let lambda1 = lambda == 1 && n == k * k + 1;
    if lambda1 {
        if let Ok(f) = construct_pa_st(k) {
            out.push(("(a)", f));
        }
    }
    if n % 4 == 1 && 2 * k == n - 1 {
        if let Ok(f) = construct_paley(n as u64) {
            out.push(("(b)", f));
        }
    }
    for e in [4usize, 6] {
        if e * k == n - 1 {
            if let Ok(fams) = construct_cyclotomic(n as u64, e as u64) {
                out.extend(fams.into_iter().map(|f| ("(c)", f)));
            }
        }
    }
    if lambda1 && k.is_multiple_of(2) {
        if let Ok(f) = construct_even_k(k / 2) {
            out.push(("(d)", f));
        }
    }
    if lambda1 && k % 2 == 1 {
        if let Ok(f) = construct_dihedral_sedf(k) {
            out.push(("dihedral", f));
        }
    }
    out
}

/// Searches one group at one parameter set and summarizes its classes.
pub fn compute_cell(g: Arc<FiniteGroup>, p: &ParamSet) -> Result<CellRecord> {
    let (n, m, k, lambda) = p.tuple();
    let fams = search_all(&g, m, k, lambda)?;
    let classes = classify_families(&fams)?;
    let known = known_constructions(n, m, k, lambda);
    let mut out = Vec::with_capacity(classes.len());
    for class in &classes {
        let rep = &class.representative;
        let mut cases: Vec<String> = Vec::new();
        let mut example = None;
        for (label, f) in &known {
            if is_equivalent(f, rep)? {
                if !cases.iter().any(|c| c == label) {
                    cases.push(label.to_string());
                }
                if example.is_none() && f.group().order() == n && **f.group() == *g {
                    example = Some(f.to_record());
                }
            }
        }
        out.push(CellClass {
            representative: rep.to_record(),
            example: example.unwrap_or_else(|| rep.to_record()),
            cases,
            members: class.members.len(),
        });
    }
    Ok(CellRecord {
        params: p.tuple(),
        group: g.name().to_string(),
        abelian: g.is_abelian(),
        families_found: fams.len(),
        classes: out,
    })
}

fn run_cells(jobs: &[(Arc<FiniteGroup>, ParamSet)], workers: usize) -> Result<Vec<CellRecord>> {
    if workers <= 1 {
        return jobs
            .iter()
            .map(|(g, p)| compute_cell(g.clone(), p))
            .collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| sedf_core::Error::Internal(e.to_string()))?;
    pool.install(|| {
        jobs.par_iter()
            .map(|(g, p)| compute_cell(g.clone(), p))
            .collect()
    })
}

/// Every (parameter set, abelian group) cell with `n ≤ max_n`.
pub fn abelian_cells(max_n: usize, workers: usize) -> Result<Vec<CellRecord>> {
    let mut jobs = Vec::new();
    for p in parameter_rows(max_n) {
        for g in abelian_groups(p.n)? {
            jobs.push((Arc::new(g), p.clone()));
        }
    }
    run_cells(&jobs, workers)
}

/// Every (parameter set, catalog nonabelian group) cell with `n ≤ max_n`.
pub fn nonabelian_cells(max_n: usize, workers: usize) -> Result<Vec<CellRecord>> {
    let mut jobs = Vec::new();
    for p in parameter_rows(max_n) {
        for g in nonabelian_groups(p.n)? {
            jobs.push((Arc::new(g), p.clone()));
        }
    }
    run_cells(&jobs, workers)
}

fn tuple_text(t: (usize, usize, usize, usize)) -> String {
    format!("({},{},{},{})", t.0, t.1, t.2, t.3)
}

fn blocks_text(rec: &sedf_core::FamilyRecord) -> String {
    rec.blocks
        .iter()
        .map(|b| format!("{{{}}}", b.join(",")))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn format_params(rows: &[ParamSet]) -> String {
    let mut s = String::new();
    writeln!(s, "{:>4} {:>4} {:>4} {:>6}", "n", "m", "k", "lambda").unwrap();
    for p in rows {
        writeln!(s, "{:>4} {:>4} {:>4} {:>6}", p.n, p.m, p.k, p.lambda).unwrap();
    }
    write!(s, "{} parameter sets", rows.len()).unwrap();
    s.push('\n');
    s
}

fn format_cell_rows(cells: &[&CellRecord], s: &mut String) {
    let width_ex = cells
        .iter()
        .flat_map(|c| c.classes.iter().map(|k| blocks_text(&k.example).len()))
        .max()
        .unwrap_or(1)
        .max("Example".len());
    writeln!(
        s,
        "{:<14} {:<10} {:>5}  {:<width_ex$}  Case",
        "Parameters", "Group", "Count", "Example"
    )
    .unwrap();
    for c in cells {
        let head = (tuple_text(c.params), c.group.clone(), c.count());
        if c.classes.is_empty() {
            writeln!(
                s,
                "{:<14} {:<10} {:>5}  {:<width_ex$}  -",
                head.0, head.1, head.2, "-"
            )
            .unwrap();
            continue;
        }
        for (i, k) in c.classes.iter().enumerate() {
            let cases = if k.cases.is_empty() {
                "-".to_string()
            } else {
                k.cases.join(",")
            };
            if i == 0 {
                writeln!(
                    s,
                    "{:<14} {:<10} {:>5}  {:<width_ex$}  {cases}",
                    head.0,
                    head.1,
                    head.2,
                    blocks_text(&k.example)
                )
                .unwrap();
            } else {
                writeln!(
                    s,
                    "{:<14} {:<10} {:>5}  {:<width_ex$}  {cases}",
                    "",
                    "",
                    "",
                    blocks_text(&k.example)
                )
                .unwrap();
            }
        }
    }
}

/// Rows with at least one class, together with every other group tried at
/// the same parameters; the remaining empty cells are summarized after.
pub fn format_abelian_table(cells: &[CellRecord]) -> String {
    let nonempty: Vec<(usize, usize, usize, usize)> = cells
        .iter()
        .filter(|c| c.count() > 0)
        .map(|c| c.params)
        .collect();
    let shown: Vec<&CellRecord> = cells
        .iter()
        .filter(|c| nonempty.contains(&c.params))
        .collect();
    let hidden: Vec<&CellRecord> = cells
        .iter()
        .filter(|c| !nonempty.contains(&c.params))
        .collect();
    let mut s = String::new();
    format_cell_rows(&shown, &mut s);
    let empty: Vec<String> = hidden
        .iter()
        .map(|c| format!("{} {}", tuple_text(c.params), c.group))
        .collect();
    writeln!(s, "No SEDF in: {}", empty.join("; ")).unwrap();
    s
}

pub fn format_nonabelian_table(cells: &[CellRecord]) -> String {
    let mut s = String::new();
    let all: Vec<&CellRecord> = cells.iter().collect();
    format_cell_rows(&all, &mut s);
    s
}
