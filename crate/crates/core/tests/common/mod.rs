//! Independent oracles shared by the integration tests. Nothing here uses
//! the pruned search.
#![allow(dead_code)]

use equibase::model::FiniteAlgebra;
use equibase::{Identity, Term, Theory};

/// Every total table over the theory's signature, filtered by direct
/// satisfaction, in lexicographic order of the concatenated tables.
pub fn naive_models(t: &Theory, n: usize) -> Vec<FiniteAlgebra> {
    let widths: Vec<usize> = t.signature.ops().iter().map(|(_, a)| n.pow(*a as u32)).collect();
    let total: usize = widths.iter().sum();
    let mut cells = vec![0usize; total];
    let mut out = Vec::new();
    loop {
        let mut tables = Vec::new();
        let mut at = 0;
        for w in &widths {
            tables.push(cells[at..at + w].to_vec());
            at += w;
        }
        let m = FiniteAlgebra::new("naive", &t.signature, n, tables).unwrap();
        if t.identities.iter().all(|i| m.satisfies(i).unwrap().holds) {
            out.push(m);
        }
        // odometer, last cell fastest
        let mut k = total;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cells[k] += 1;
            if cells[k] < n {
                break;
            }
            cells[k] = 0;
        }
    }
}

/// Replaces each occurrence of a defined constant by its body, renaming the
/// body's variables apart at every occurrence.
pub fn expand_definitions(i: &Identity, defs: &[(String, Term)]) -> Identity {
    let mut counter = 0;
    let lhs = expand(&i.lhs, defs, &mut counter);
    let rhs = expand(&i.rhs, defs, &mut counter);
    Identity::new(&i.name, lhs, rhs)
}

fn expand(t: &Term, defs: &[(String, Term)], counter: &mut usize) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::App(op, args) if args.is_empty() => {
            match defs.iter().find(|(c, _)| c.as_str() == op.as_ref()) {
                Some((_, body)) => {
                    *counter += 1;
                    let k = *counter;
                    let body = rename(body, &|v| format!("fresh{k}_{v}"));
                    expand(&body, defs, counter)
                }
                None => t.clone(),
            }
        }
        Term::App(op, args) => Term::app(op, args.iter().map(|a| expand(a, defs, counter)).collect()),
    }
}

fn rename(t: &Term, f: &dyn Fn(&str) -> String) -> Term {
    match t {
        Term::Var(v) => Term::var(&f(v)),
        Term::App(op, args) => Term::app(op, args.iter().map(|a| rename(a, f)).collect()),
    }
}

pub fn cells_sorted(models: &[FiniteAlgebra]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = models.iter().map(FiniteAlgebra::cells).collect();
    v.sort();
    v
}
