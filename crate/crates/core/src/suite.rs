//! Named invariant checks run by `qlo verify`.

use num_traits::ToPrimitive;

use crate::fock::TruncatedRep;
use crate::monoid::{Generator, IndependenceGraph, JoinResult, Trace, Wick};
use crate::thermo::{Method, ThermoContext};
use crate::{growth, oracle, par, Rational, Result};

/// Largest basis used for brute-force enumeration and the truncated model.
pub const MAX_DIM: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

fn describe<T: std::fmt::Debug>(g: &IndependenceGraph, what: &[&Trace], extra: T) -> String {
    let words: Vec<String> = what.iter().map(|t| g.format_trace(t)).collect();
    format!("counterexample ({}) {extra:?}", words.join(", "))
}

/// Largest cutoff `<= cutoff` whose ball has at most [`MAX_DIM`] elements.
fn bounded_cutoff(g: &IndependenceGraph, cutoff: Rational) -> Result<Rational> {
    let table = growth::growth_table(g, cutoff)?;
    let mut total = 0usize;
    let mut best = Rational::from_integer(0);
    for row in table.rows() {
        total = total.saturating_add(row.count.to_usize().unwrap_or(usize::MAX));
        if total > MAX_DIM {
            break;
        }
        best = row.lambda;
    }
    Ok(if total <= MAX_DIM { cutoff } else { best })
}

/// Short traces for exhaustive pair and quadruple checks, at most `limit`.
fn short_traces(g: &IndependenceGraph, max_len: usize, limit: usize) -> Vec<Trace> {
    let mut len = max_len;
    loop {
        let ts = g.traces_up_to_length(len);
        if ts.len() <= limit || len == 1 {
            return ts;
        }
        len -= 1;
    }
}

fn pairs(ts: &[Trace]) -> Vec<(usize, usize)> {
    (0..ts.len()).flat_map(|i| (0..ts.len()).map(move |j| (i, j))).collect()
}

fn check_growth(g: &IndependenceGraph, cutoff: Rational) -> Result<CheckOutcome> {
    let name = "growth-matches-enumeration";
    let w = bounded_cutoff(g, cutoff)?;
    let table = growth::growth_table(g, w)?;
    let words = oracle::enumerate_by_words(g, w)?;
    let dfs = growth::enumerate_up_to(g, w)?;
    if words != dfs {
        return Ok(CheckOutcome::new(name, false, format!("enumerations differ at cutoff {w}")));
    }
    for row in table.rows() {
        let n = words.iter().filter(|t| t.weight() == row.lambda).count();
        if row.count != n.into() {
            return Ok(CheckOutcome::new(
                name,
                false,
                format!("a_n = {} but {} elements of weight {}", row.count, n, row.lambda),
            ));
        }
    }
    Ok(CheckOutcome::new(name, true, format!("{} elements up to weight {w}", words.len())))
}

fn check_inversion(g: &IndependenceGraph, cutoff: Rational) -> Result<CheckOutcome> {
    let name = "clique-series-inversion";
    let report = growth::verify_inversion(g, cutoff)?;
    Ok(match report.first_mismatch {
        None => CheckOutcome::new(name, true, format!("{} coefficients", report.terms_checked)),
        Some(m) => CheckOutcome::new(
            name,
            false,
            format!("at t^{}: series {} vs count {}", m.exponent, m.series, m.count),
        ),
    })
}

fn check_normal_form(g: &IndependenceGraph) -> CheckOutcome {
    let name = "normal-form-commutation";
    let n = g.len();
    let mut words: Vec<Vec<Generator>> = vec![Vec::new()];
    let gens: Vec<Generator> = g.generators().collect();
    let max_len = if n <= 4 { 4 } else { 3 };
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &words {
            for &s in &gens {
                let mut v = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        words = next;
    }
    let bad = par::find_failure(&words, |w| {
        let base = g.normalize(w);
        (1..w.len()).all(|i| {
            if !g.commute(w[i - 1], w[i]) {
                return true;
            }
            let mut v = w.clone();
            v.swap(i - 1, i);
            g.normalize(&v) == base
        })
    });
    match bad {
        None => CheckOutcome::new(name, true, format!("{} words of length {max_len}", words.len())),
        Some(i) => {
            let text: Vec<&str> = words[i].iter().map(|&s| g.name(s)).collect();
            CheckOutcome::new(name, false, format!("word {}", text.join(" ")))
        }
    }
}

fn check_join(g: &IndependenceGraph, ts: &[Trace]) -> Result<Vec<CheckOutcome>> {
    let ps = pairs(ts);
    let search = par::map(&ps, |&(i, j)| oracle::join_by_search(g, &ts[i], &ts[j]).expect("same graph"));
    let mut join_bad = None;
    let mut wick_bad = None;
    let mut div_bad = None;
    for (&(i, j), expect) in ps.iter().zip(&search) {
        let (p, q) = (&ts[i], &ts[j]);
        let got = g.join(p, q)?;
        if join_bad.is_none() && &got != expect {
            join_bad = Some(describe(g, &[p, q], &got));
        }
        let wick_ok = match (g.wick(p, q)?, &got) {
            (Wick::Zero, JoinResult::Infinity) => true,
            (Wick::Pair(x, y), JoinResult::Finite(top)) => g.multiply(p, &x)? == *top && g.multiply(q, &y)? == *top,
            _ => false,
        };
        if wick_bad.is_none() && !wick_ok {
            wick_bad = Some(describe(g, &[p, q], ()));
        }
        if div_bad.is_none() && g.divides(p, q)? != oracle::divides_by_search(g, p, q)? {
            div_bad = Some(describe(g, &[p, q], ()));
        }
    }
    let detail = format!("{} pairs", ps.len());
    let outcome = |name, bad: Option<String>| match bad {
        None => CheckOutcome::new(name, true, detail.clone()),
        Some(d) => CheckOutcome::new(name, false, d),
    };
    Ok(vec![
        outcome("join-matches-search", join_bad),
        outcome("wick-completes-join", wick_bad),
        outcome("divides-matches-search", div_bad),
    ])
}

fn check_translation(g: &IndependenceGraph, ts: &[Trace]) -> Result<CheckOutcome> {
    let name = "join-left-translation";
    let triples: Vec<(usize, usize, usize)> = (0..ts.len())
        .flat_map(|z| pairs(ts).into_iter().map(move |(p, q)| (z, p, q)))
        .collect();
    let bad = par::find_failure(&triples, |&(z, p, q)| {
        let (z, p, q) = (&ts[z], &ts[p], &ts[q]);
        let zp = g.multiply(z, p).expect("same graph");
        let zq = g.multiply(z, q).expect("same graph");
        let lhs = g.join(&zp, &zq).expect("same graph");
        match g.join(p, q).expect("same graph") {
            JoinResult::Finite(j) => lhs == JoinResult::Finite(g.multiply(z, &j).expect("same graph")),
            JoinResult::Infinity => lhs.is_infinite(),
        }
    });
    Ok(match bad {
        None => CheckOutcome::new(name, true, format!("{} triples", triples.len())),
        Some(i) => {
            let (z, p, q) = triples[i];
            CheckOutcome::new(name, false, describe(g, &[&ts[z], &ts[p], &ts[q]], ()))
        }
    })
}

fn check_thermo(ctx: &ThermoContext) -> Result<Vec<CheckOutcome>> {
    let g = ctx.graph();
    let tol = 1e-12;
    let beta_c = ctx.beta_critical(tol)?;
    let bound = ctx.critical_upper_bound();
    let cert = ctx.certify_smallest_root(tol)?;
    let root = ctx.clique_roots_in_unit_interval(tol)?;
    let smallest = root.roots.first().map(|r| r.value);
    let agree = smallest.is_some_and(|t| ((-beta_c).exp() - t).abs() <= 2.0 * tol);
    Ok(vec![
        CheckOutcome::new(
            "critical-below-generator-bound",
            beta_c <= bound + 1e-10,
            format!("beta_c = {beta_c:.15}, bound = {bound:.15}"),
        ),
        CheckOutcome::new(
            "critical-zero-iff-complete",
            ctx.critical_is_zero() == g.is_complete(),
            format!("complete = {}, beta_c zero = {}", g.is_complete(), ctx.critical_is_zero()),
        ),
        CheckOutcome::new(
            "smallest-root-certified",
            cert.holds() && agree,
            format!("no sign change below {:.15}; smallest root {:?}", cert.lower, smallest),
        ),
    ])
}

fn check_kms_symbolic(ctx: &ThermoContext, ts: &[Trace]) -> Result<CheckOutcome> {
    let name = "kms-identity";
    let n = ts.len();
    let quads: Vec<usize> = (0..n.pow(4)).collect();
    let bad = par::find_failure(&quads, |&k| {
        let (a, b, c, d) = (k % n, k / n % n, k / n / n % n, k / n / n / n);
        ctx.kms_identity_check(&ts[a], &ts[b], &ts[c], &ts[d])
            .expect("same graph")
            .holds
    });
    Ok(match bad {
        None => CheckOutcome::new(name, true, format!("{} quadruples", quads.len())),
        Some(k) => {
            let (a, b, c, d) = (k % n, k / n % n, k / n / n % n, k / n / n / n);
            CheckOutcome::new(name, false, describe(ctx.graph(), &[&ts[a], &ts[b], &ts[c], &ts[d]], ()))
        }
    })
}

fn check_fock(ctx: &ThermoContext, cutoff: Rational, ts: &[Trace]) -> Result<Vec<CheckOutcome>> {
    let g = ctx.graph();
    let w = bounded_cutoff(g, cutoff)?;
    let rep = TruncatedRep::new(g, w)?;
    let mut out = Vec::new();

    let nica = rep.nica_check_all(ts)?;
    out.push(CheckOutcome::new(
        "nica-covariance",
        nica.is_none(),
        match &nica {
            None => format!("{} pairs at cutoff {w}", ts.len() * ts.len()),
            Some((p, q)) => describe(g, &[p, q], ()),
        },
    ));

    let vacuum = rep.vacuum_projection();
    let rank_one = vacuum.as_ref().is_ok_and(|q| {
        q.entries().len() == 1 && rep.basis()[q.entries()[0].0].is_identity()
    });
    out.push(CheckOutcome::new(
        "vacuum-projection",
        rank_one,
        match vacuum {
            Ok(q) => format!("rank {} at cutoff {w}", q.nnz()),
            Err(e) => e.to_string(),
        },
    ));

    let mut adj_bad = None;
    for p in ts {
        if rep.left_op(p)?.adjoint() != rep.left_op_adjoint(p)? {
            adj_bad = Some(describe(g, &[p], ()));
            break;
        }
    }
    out.push(CheckOutcome::new(
        "adjoint-is-backward-shift",
        adj_bad.is_none(),
        adj_bad.unwrap_or_else(|| format!("{} operators", ts.len())),
    ));

    let beta_c = ctx.beta_critical(1e-12)?;
    let beta = if beta_c > 0.0 { 1.5 * beta_c } else { 1.0 };
    let tail = ctx.tail_bound(beta, w)?;
    let z_w = ctx.partition_function(beta, Method::Truncated(w))?;
    let mut worst = 0f64;
    let mut off_diag_ok = true;
    for p in ts {
        let v = rep.gibbs_numeric(&rep.monomial(p, p)?, beta)?;
        let exact = ctx.gibbs_value(p, p)?.at(beta);
        worst = worst.max((v.re - exact).abs() + v.im.abs());
        for q in ts {
            if p != q && rep.gibbs_numeric(&rep.monomial(p, q)?, beta)?.norm() != 0.0 {
                off_diag_ok = false;
            }
        }
    }
    let bound = tail / z_w;
    out.push(CheckOutcome::new(
        "gibbs-monomials",
        worst <= bound + 1e-12 && off_diag_ok,
        format!("max error {worst:.3e}, tail bound {bound:.3e}, beta {beta:.6}, off-diagonal zero {off_diag_ok}"),
    ));

    let e = g.identity();
    let mut kms_worst: Option<(f64, f64)> = None;
    let mut kms_ok = true;
    let letters: Vec<Trace> = g.generators().map(|s| g.letter(s)).collect();
    for a in &letters {
        for b in &letters {
            let r = rep.kms_numeric_check(ctx, (a, b), (b, a), beta, 1e-12)?;
            kms_ok &= r.within_bound;
            let r2 = rep.kms_numeric_check(ctx, (a, &e), (&e, b), beta, 1e-12)?;
            kms_ok &= r2.within_bound;
            for r in [r, r2] {
                if kms_worst.is_none_or(|(res, _)| r.residual > res) {
                    kms_worst = Some((r.residual, r.bound));
                }
            }
        }
    }
    let (res, bnd) = kms_worst.unwrap_or_default();
    out.push(CheckOutcome::new(
        "kms-numeric",
        kms_ok,
        format!("largest residual {res:.3e} with bound {bnd:.3e}"),
    ));
    Ok(out)
}

/// Runs every invariant check on `g` with truncations at `cutoff`.
pub fn run(g: &IndependenceGraph, cutoff: Rational) -> Result<Vec<CheckOutcome>> {
    let ctx = ThermoContext::new(g.clone())?;
    let ts = short_traces(g, 3, 30);
    let mut out = vec![check_growth(g, cutoff)?, check_inversion(g, cutoff)?, check_normal_form(g)];
    out.extend(check_join(g, &ts)?);
    let small = short_traces(g, 2, 12);
    out.push(check_translation(g, &small)?);
    out.extend(check_thermo(&ctx)?);
    out.push(check_kms_symbolic(&ctx, &small)?);
    out.extend(check_fock(&ctx, cutoff, &small)?);
    Ok(out)
}
