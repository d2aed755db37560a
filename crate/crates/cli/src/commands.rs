use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use semifree::charalg::{
    boundary_witness, is_acyclic_bounded, is_boundary_bruteforce, two_sided_member_bounded, TwoSidedCertificate,
};
use semifree::dga::Dga;
use semifree::supercomm::{
    acyclicity_witness_char2, acyclicity_witness_char_ne2, example14_table, sc_char_vanishing, ScDga, ScPoly,
    TrivialityCertificate,
};
use semifree::text::structured_terms;
use semifree::weakalg::{boundary_basis, weak_divide};
use semifree::{Bounded, Error, Poly, Signature};

use crate::document::{sc_structured_terms, CertificateDocument, DgaDocument, Loaded, PolyInput, Terms};
use crate::fixtures::{self, read_source, FIXTURES};
use crate::{CliError, Report, EXIT_OK, EXIT_REFUTED, EXIT_UNKNOWN_AT_CAP};

type Outcome = Result<Report, CliError>;

pub fn load(arg: &str) -> Result<Loaded, CliError> {
    let doc = DgaDocument::from_json(&read_source(arg)?).map_err(|e| match e {
        CliError::Parse(m) => CliError::Parse(format!("{arg}: {m}")),
        other => other,
    })?;
    Ok(doc.build()?)
}

fn load_free(arg: &str) -> Result<Dga, CliError> {
    match load(arg)? {
        Loaded::Free(d) => Ok(d),
        Loaded::Super(_) => {
            Err(Error::Precondition(format!("{arg} is graded-commutative; this command needs a free presentation")).into())
        }
    }
}

fn poly(sig: &Arc<Signature>, arg: &str) -> Result<Poly, CliError> {
    Ok(PolyInput::from_arg(arg)?.to_poly(sig)?)
}

fn json_terms(t: &Terms) -> String {
    serde_json::to_string(t).expect("terms serialize")
}

fn nu_text(p: &Poly) -> String {
    p.nu().map_or("-inf".to_string(), |n| n.to_string())
}

/// Validates one or more presentations. With several files and `jobs > 1`
/// the files are checked on worker threads; the output keeps input order and
/// the exit code is the largest over all files.
pub fn validate(files: &[String], jobs: usize) -> Outcome {
    let results: Vec<Outcome> = if jobs <= 1 || files.len() <= 1 {
        files.iter().map(|f| validate_one(f)).collect()
    } else {
        let next = AtomicUsize::new(0);
        let mut slots: Vec<Option<Outcome>> = (0..files.len()).map(|_| None).collect();
        let done: Vec<(usize, Outcome)> = std::thread::scope(|s| {
            let workers: Vec<_> = (0..jobs.min(files.len()))
                .map(|_| {
                    s.spawn(|| {
                        let mut mine = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            if i >= files.len() {
                                break mine;
                            }
                            mine.push((i, validate_one(&files[i])));
                        }
                    })
                })
                .collect();
            workers.into_iter().flat_map(|w| w.join().expect("worker panicked")).collect()
        });
        for (i, r) in done {
            slots[i] = Some(r);
        }
        slots.into_iter().map(|r| r.expect("every file checked")).collect()
    };
    let mut text = String::new();
    let mut code = EXIT_OK;
    for (file, r) in files.iter().zip(results) {
        match r {
            Ok(rep) => {
                text.push_str(&rep.text);
                code = code.max(rep.code);
            }
            Err(e) => {
                let _ = writeln!(text, "{file}: error: {e}");
                code = code.max(e.exit_code());
            }
        }
    }
    Ok(Report { text, code })
}

fn validate_one(file: &str) -> Outcome {
    let (valid, detail) = match load(file)? {
        Loaded::Free(d) => {
            let r = d.validate();
            (r.is_valid(), r.to_string())
        }
        Loaded::Super(d) => {
            let r = d.validate();
            (r.is_valid(), r.to_string())
        }
    };
    if valid {
        Ok(Report::ok(format!("{file}: valid\n")))
    } else {
        let mut text = format!("{file}: invalid\n");
        for line in detail.lines() {
            let _ = writeln!(text, "  {line}");
        }
        Ok(Report { text, code: EXIT_REFUTED })
    }
}

pub fn diff(file: &str, arg: &str) -> Outcome {
    let input = PolyInput::from_arg(arg)?;
    match load(file)? {
        Loaded::Free(d) => {
            let x = input.to_poly(d.signature())?;
            let dx = d.leibniz_extend(&x)?;
            Ok(Report::ok(format!("d({x}) = {dx}\nstructured: {}\n", json_terms(&structured_terms(&dx)))))
        }
        Loaded::Super(d) => {
            let x = input.to_sc_poly(d.signature())?;
            let dx = d.sc_leibniz(&x)?;
            Ok(Report::ok(format!("d({x}) = {dx}\nstructured: {}\n", json_terms(&sc_structured_terms(&dx)))))
        }
    }
}

pub fn nu(file: &str, arg: &str) -> Outcome {
    let dga = load_free(file)?;
    let sig = dga.signature();
    let x = poly(sig, arg)?;
    let df = sig.degree_fn();
    let weights: Vec<String> =
        sig.generators().iter().zip(df.weights()).map(|(g, w)| format!("{}={w}", g.name)).collect();
    Ok(Report::ok(format!("N = {}\nweights: {}\nnu({x}) = {}\n", df.scale(), weights.join(" "), nu_text(&x))))
}

pub fn divide(file: &str, arg: &str, by: &[String]) -> Outcome {
    let dga = load_free(file)?;
    let sig = dga.signature();
    let x = poly(sig, arg)?;
    let family = by.iter().map(|b| poly(sig, b)).collect::<Result<Vec<_>, _>>()?;
    if family.iter().any(Poly::is_zero) {
        return Err(Error::Precondition("divisors must be nonzero".into()).into());
    }
    let div = weak_divide(&x, &family)?;
    let mut text = format!("x = {x}\n");
    for (k, (q, f)) in div.quotients.iter().zip(&family).enumerate() {
        let _ = writeln!(text, "quotient {} on ({f}) = {q}", k + 1);
    }
    let _ = writeln!(text, "remainder = {} (nu {})", div.remainder, nu_text(&div.remainder));
    let _ = writeln!(text, "structured remainder: {}", json_terms(&structured_terms(&div.remainder)));
    Ok(Report::ok(text))
}

pub fn basis(file: &str, pairs: &[String]) -> Outcome {
    let dga = load_free(file)?;
    let sig = dga.signature();
    let mut input = Vec::new();
    for p in pairs {
        let (y, g) = match p.split_once(':') {
            Some((y, g)) => {
                let y = poly(sig, y)?;
                (y, poly(sig, g)?)
            }
            None => {
                let y = poly(sig, p)?;
                let g = dga.d(&y);
                (y, g)
            }
        };
        input.push((y, g));
    }
    let cr = boundary_basis(&dga, &input)?;
    let mut text = format!("accepted {} of {} input pairs (max input nu {})\n", cr.pairs.len(), input.len(), cr.max_nu);
    for (i, ((y, g), b)) in cr.pairs.iter().zip(&cr.b).enumerate() {
        let _ = writeln!(text, "{}: y = {y}", i + 1);
        let _ = writeln!(text, "   d(y) = {g}");
        let _ = writeln!(text, "   b = {b} (nu {})", nu_text(b));
    }
    if cr.cycle_relations.is_empty() {
        text.push_str("cycle relations: none\n");
    } else {
        text.push_str("cycle relations:\n");
        for r in &cr.cycle_relations {
            let _ = writeln!(text, "   {r}");
        }
    }
    Ok(Report::ok(text))
}

fn format_certificate(terms: &[(Poly, Poly, Poly)]) -> String {
    let mut text = String::new();
    for (u, v, w) in terms {
        let _ = writeln!(text, "  ({u}) d({v}) ({w})");
    }
    text
}

pub fn member(file: &str, arg: &str, cap: u64) -> Outcome {
    let dga = load_free(file)?;
    let x = poly(dga.signature(), arg)?;
    match two_sided_member_bounded(&dga, &x, cap)? {
        Bounded::Found(cert) => Ok(Report::ok(format!(
            "{x} lies in the two-sided boundary ideal:\n{}",
            format_certificate(cert.terms())
        ))),
        Bounded::UnknownAtCap { cap } => {
            Ok(Report { text: format!("unknown at cap {cap}: no certificate for {x}\n"), code: EXIT_UNKNOWN_AT_CAP })
        }
    }
}

pub fn witness(file: &str, arg: &str, cert_file: &str) -> Outcome {
    let dga = load_free(file)?;
    let sig = dga.signature();
    let x = poly(sig, arg)?;
    let doc = CertificateDocument::from_json(&read_source(cert_file)?)?;
    let cert = TwoSidedCertificate::new(&dga, &x, doc.triples(sig)?)?;
    let w = boundary_witness(&dga, &x, &cert)?;
    Ok(Report::ok(format!(
        "y = {}\nstructured: {}\nd(y) = {x}: verified\n",
        w.y(),
        json_terms(&structured_terms(w.y()))
    )))
}

pub fn acyclic(file: &str, cap: u64) -> Outcome {
    let dga = load_free(file)?;
    match is_acyclic_bounded(&dga, cap)? {
        Bounded::Found(w) => Ok(Report::ok(format!(
            "acyclic: y = {}\nstructured: {}\nd(y) = 1: verified\n",
            w.y(),
            json_terms(&structured_terms(w.y()))
        ))),
        Bounded::UnknownAtCap { cap } => Ok(Report {
            text: format!("unknown at cap {cap}: 1 is not in the two-sided boundary ideal within the cap\n"),
            code: EXIT_UNKNOWN_AT_CAP,
        }),
    }
}

pub fn oracle(file: &str, arg: &str, cap: u64) -> Outcome {
    let dga = load_free(file)?;
    let x = poly(dga.signature(), arg)?;
    match is_boundary_bruteforce(&dga, &x, cap)? {
        Bounded::Found(y) => Ok(Report::ok(format!(
            "boundary: y = {y}\nstructured: {}\nd(y) = {x}: verified\n",
            json_terms(&structured_terms(&y))
        ))),
        Bounded::UnknownAtCap { cap } => {
            Ok(Report { text: format!("unknown at cap {cap}: no preimage of {x} with nu <= {cap}\n"), code: EXIT_UNKNOWN_AT_CAP })
        }
    }
}

/// Turns `d(a) w` terms with `x = 1` into pairs `(x_i, a)` with
/// `1 = sum x_i d(a)`, moving `w` to the left with the commutation sign.
fn triviality_from(dga: &ScDga, cert: &semifree::supercomm::ScCertificate) -> TrivialityCertificate {
    let sig = dga.signature();
    let pairs = cert
        .terms
        .iter()
        .map(|(u, v, w)| {
            let v_even = v.terms().all(|(m, _)| !sig.word_is_odd(m));
            let (even, odd) = w.parity_split();
            // d(v) is odd exactly when v is even
            let moved = if v_even { &even - &odd } else { w.clone() };
            (u * &moved, v.clone())
        })
        .collect();
    TrivialityCertificate::new(pairs)
}

pub fn sc_check(file: &str, cap: usize) -> Outcome {
    let dga = match load(file)? {
        Loaded::Super(d) => d,
        Loaded::Free(_) => {
            return Err(Error::Precondition(format!("{file} is a free presentation; sc-check needs a graded-commutative one")).into())
        }
    };
    let mut text = String::new();
    let mut code = EXIT_OK;
    let names = ["b", "b1", "b2", "c"];
    if names.iter().all(|n| dga.signature().index_of(n).is_some()) {
        text.push_str("differential table:\n");
        for line in example14_table(&dga)? {
            let _ = writeln!(text, "  {line}");
            if !line.passed() {
                code = EXIT_REFUTED;
            }
        }
        let x = dga.parse("b c b2")?;
        let cycle = dga.is_cycle(&x);
        let _ = writeln!(text, "b c b2 is {}a cycle", if cycle { "" } else { "not " });
        match sc_char_vanishing(&dga, &x, cap)? {
            Bounded::Found(c) => {
                let _ = writeln!(text, "b c b2 vanishes in the characteristic algebra ({} term certificate)", c.terms.len());
            }
            Bounded::UnknownAtCap { cap } => {
                let _ = writeln!(text, "no certificate for b c b2 within length {cap}");
            }
        }
        match semifree::supercomm::sc_is_boundary_bruteforce(&dga, &x, cap)? {
            Bounded::Found(y) => {
                let _ = writeln!(text, "b c b2 = d({y})");
            }
            Bounded::UnknownAtCap { cap } => {
                let _ = writeln!(text, "b c b2 has no preimage among words of length <= {cap}");
            }
        }
    }
    text.push_str("acyclicity:\n");
    let one = ScPoly::one(dga.signature());
    match sc_char_vanishing(&dga, &one, cap)? {
        Bounded::Found(c) => {
            let cert = triviality_from(&dga, &c);
            let w = if dga.field().characteristic() == 2 {
                acyclicity_witness_char2(&dga, &cert)?
            } else {
                acyclicity_witness_char_ne2(&dga, &cert)?
            };
            let _ = writeln!(text, "  w = {w}\n  d(w) = 1: verified");
        }
        Bounded::UnknownAtCap { cap } => {
            let _ = writeln!(text, "  no certificate for 1 within length {cap}");
        }
    }
    Ok(Report { text, code })
}

pub fn fixtures_list() -> Outcome {
    let width = FIXTURES.iter().map(|f| f.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for f in FIXTURES {
        let _ = writeln!(text, "{:width$}  {}", f.name, f.summary);
    }
    Ok(Report::ok(text))
}

pub fn fixtures_show(name: &str) -> Outcome {
    let f = fixtures::find(name).ok_or_else(|| CliError::Io(format!("unknown fixture {name:?}")))?;
    Ok(Report::ok(read_source(f.name)?))
}
