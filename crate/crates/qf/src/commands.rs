use std::fs;

use qf_core::classify::{abenvel_scan_with_budget, enumerate_quandles, Filters, ScanEntry, ScanReport, ScanStatus};
use qf_core::constructions::{self, conj, conj_inv, core, dihedral_quandle, takasaki, trivial, u_quandle};
use qf_core::envelope::{
    abelianization, default_catalog, injectivity_certificate, presentation_of_with, reconstruct_check,
    search_certificate, verify_r2n, verify_u_reduction, Assignment, Certificate, EmptyRelators,
};
use qf_core::freealg::{
    bounded_closure, envelope_of, free_quandle_elements, presentation_free_product, FreeRackElement, QWord,
};
use qf_core::ga::{compare_with_ga, ga_quandle};
use qf_core::quandle::DEFAULT_SEARCH_BUDGET;
use qf_core::snf::AbelianInvariants;
use qf_core::{FiniteGroup, FiniteQuandle, GroupSpec};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::{Check, Command, Envelope, Format, Free, Make, OutputArgs};
use crate::error::CliError;
use crate::io::{
    read_group, read_json, read_quandle, to_json, ActionsFile, CertificateFile, GroupFile, GroupPresentationFile,
    PresentationFile, QuandleFile,
};
use crate::render;

/// What a command prints, and whether its verdict was positive.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn json<T: Serialize>(value: &T, ok: bool) -> Self {
        Self { text: to_json(value), ok }
    }
}

/// Node budget for searches: `QF_SEARCH_BUDGET` if set.
pub fn search_budget() -> Result<u64, CliError> {
    match std::env::var("QF_SEARCH_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::usage(format!("QF_SEARCH_BUDGET: `{v}` is not a count"))),
        Err(_) => Ok(DEFAULT_SEARCH_BUDGET),
    }
}

pub fn execute(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Make { what, output } => make(what, &output),
        Command::Check { what } => check(what),
        Command::Orbits { file } => {
            let q = read_quandle(&file)?;
            Ok(Output::json(&json!({ "orbits": q.orbits(), "connected": q.is_connected() }), true))
        }
        Command::Inn { file } => {
            let q = read_quandle(&file)?;
            let inn = q.inn_group()?;
            let gens: Vec<Vec<usize>> = (0..q.order()).map(|x| q.inner_symmetry(x).images()).collect();
            Ok(Output::json(&json!({ "order": inn.elements.len(), "generators": gens }), true))
        }
        Command::Iso { first, second } => {
            let (a, b) = (read_quandle(&first)?, read_quandle(&second)?);
            Ok(match a.is_isomorphic_with_budget(&b, search_budget()?)? {
                Some(w) => Output::json(&json!({ "isomorphic": true, "witness": w.map }), true),
                None => Output::json(&json!({ "isomorphic": false }), false),
            })
        }
        Command::Homs { first, second } => {
            let (a, b) = (read_quandle(&first)?, read_quandle(&second)?);
            let homs = a.homomorphisms_with_budget(&b, search_budget()?)?;
            Ok(Output::json(&json!({ "count": homs.len(), "homomorphisms": homs }), true))
        }
        Command::Ga { group, elems, compare_conj, output } => ga(&group, &elems, compare_conj, &output),
        Command::Envelope { what } => envelope(what),
        Command::Free { what } => free(what),
        Command::Classify { order, orbits, connected, format } => classify(order, orbits, connected, format),
        Command::AbenvelScan { max_order, format } => {
            let report = abenvel_scan_with_budget(max_order, search_budget()?)?;
            let ok = report.contradictions() == 0;
            Ok(match format {
                Format::Json => Output::json(&scan_json(&report), ok),
                Format::Table => Output { text: scan_table(&report), ok },
            })
        }
    }
}

fn emit_quandle(q: &FiniteQuandle, output: &OutputArgs) -> Result<Output, CliError> {
    let text = match output.format {
        Format::Json => to_json(&QuandleFile::from_quandle(q)),
        Format::Table => render::quandle_table(q),
    };
    write_out(text, output)
}

fn write_out(text: String, output: &OutputArgs) -> Result<Output, CliError> {
    match &output.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            Ok(Output { text: String::new(), ok: true })
        }
        None => Ok(Output { text, ok: true }),
    }
}

fn make(what: Make, output: &OutputArgs) -> Result<Output, CliError> {
    let q = match what {
        Make::Trivial { n } => trivial(n)?,
        Make::Dihedral { n } => dihedral_quandle(n)?,
        Make::Takasaki { group } => takasaki(&read_group(&group)?)?,
        Make::Conj { group } => conj(&read_group(&group)?)?,
        Make::ConjInv { group } => conj_inv(&read_group(&group)?)?,
        Make::Core { group } => core(&read_group(&group)?)?,
        Make::U { n, m } => u_quandle(n, m)?,
        Make::Union { first, second, actions } => {
            let (sigma, tau) = read_json::<ActionsFile>(&actions)?.permutations()?;
            constructions::union(&read_quandle(&first)?, &read_quandle(&second)?, &sigma, &tau)?
        }
        Make::Product { first, second } => read_quandle(&first)?.direct_product(&read_quandle(&second)?)?,
        Make::Group { spec } => {
            let g = FiniteGroup::standard(&GroupSpec::parse(&spec)?)?;
            let text = match output.format {
                Format::Json => to_json(&GroupFile::from_group(&g)),
                Format::Table => render::group_table(&g),
            };
            return write_out(text, output);
        }
    };
    emit_quandle(&q, output)
}

fn check(what: Check) -> Result<Output, CliError> {
    match what {
        Check::Axioms { file } => {
            let raw: QuandleFile = read_json(&file)?;
            match raw.to_quandle() {
                Ok(q) => Ok(Output::json(&json!({ "valid": true, "order": q.order() }), true)),
                Err(CliError::Rejected(message)) => {
                    let violation = qf_core::FiniteQuandle::from_table(&raw.table).err();
                    let detail = match violation {
                        Some(qf_core::QuandleError::AxiomViolation { axiom, witness }) => {
                            json!({ "valid": false, "axiom": axiom.to_string(), "witness": witness, "message": message })
                        }
                        _ => json!({ "valid": false, "message": message }),
                    };
                    Ok(Output::json(&detail, false))
                }
                Err(e) => Err(e),
            }
        }
        Check::Predicates { file } => Ok(Output::json(&read_quandle(&file)?.predicates(), true)),
        Check::Normal { file, subset } => {
            let q = read_quandle(&file)?;
            let sub = q.is_subquandle(&subset)?;
            let normal = q.is_normal_subquandle(&subset)?;
            Ok(Output::json(&json!({ "subquandle": sub, "normal": normal }), normal))
        }
    }
}

fn parse_elements(g: &FiniteGroup, elems: &[String]) -> Result<Vec<usize>, CliError> {
    elems
        .iter()
        .map(|t| {
            let t = t.trim();
            match t.parse::<usize>() {
                Ok(i) => Ok(g.check_element(i)?),
                Err(_) => g.element_by_label(t).ok_or_else(|| CliError::usage(format!("no element labelled `{t}`"))),
            }
        })
        .collect()
}

fn ga(group: &str, elems: &[String], compare_conj: bool, output: &OutputArgs) -> Result<Output, CliError> {
    let g = read_group(group)?;
    let base = parse_elements(&g, elems)?;
    if compare_conj {
        let c = compare_with_ga(&g, &base)?;
        let value = json!({
            "isomorphic": c.isomorphic,
            "witness": c.witness.map(|w| w.map),
            "pairwise_nonconjugate": c.pairwise_nonconjugate,
            "ga_orbits": c.ga_orbits,
            "conj_orbits": c.conj_orbits,
        });
        let ok = c.isomorphic;
        let mut out = write_out(to_json(&value), output)?;
        out.ok = ok;
        return Ok(out);
    }
    emit_quandle(ga_quandle(&g, &base)?.quandle(), output)
}

fn abelian_json(a: &AbelianInvariants) -> Value {
    let torsion: Vec<Value> = a
        .torsion
        .iter()
        .map(|t| match u64::try_from(t) {
            Ok(v) => json!(v),
            Err(_) => json!(t.to_string()),
        })
        .collect();
    json!({ "free_rank": a.free_rank, "torsion": torsion })
}

fn catalog(spec: &str) -> Result<Vec<FiniteGroup>, CliError> {
    if spec.trim() == "default" {
        return Ok(default_catalog());
    }
    spec.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| Ok(FiniteGroup::standard(&GroupSpec::parse(s.trim())?)?))
        .collect()
}

fn with_passes<T: Serialize>(report: &T, passes: bool) -> Value {
    let mut v = serde_json::to_value(report).expect("reports serialize");
    if let Value::Object(map) = &mut v {
        map.insert("passes".into(), json!(passes));
    }
    v
}

fn envelope(what: Envelope) -> Result<Output, CliError> {
    match what {
        Envelope::Present { file, keep_empty } => {
            let policy = if keep_empty { EmptyRelators::Keep } else { EmptyRelators::Drop };
            let p = presentation_of_with(&read_quandle(&file)?, policy);
            Ok(Output::json(&GroupPresentationFile::from_presentation(&p), true))
        }
        Envelope::Abelianize { file } => {
            let q = read_quandle(&file)?;
            Ok(Output::json(&abelian_json(&abelianization(&presentation_of_with(&q, EmptyRelators::Drop))), true))
        }
        Envelope::Certify { file, catalog: spec } => {
            let q = read_quandle(&file)?;
            let groups = catalog(&spec)?;
            Ok(match search_certificate(&q, &groups, search_budget()?)? {
                Some(cert) => {
                    let out = CertificateFile {
                        quandle: file.display().to_string(),
                        group: GroupFile::from_group(&cert.group),
                        images: cert.images,
                    };
                    Output::json(&out, true)
                }
                None => Output::json(&json!({ "found": false }), false),
            })
        }
        Envelope::Reconstruct { file, cert } => {
            let q = read_quandle(&file)?;
            let c: CertificateFile = read_json(&cert)?;
            let group = c.group.to_group()?;
            let checked = injectivity_certificate(&q, &Assignment::new(group, c.images)?)?;
            let Certificate { group, images } = checked;
            let report = reconstruct_check(&q, &Certificate { group, images })?;
            let value = json!({
                "base": report.base,
                "ga_order": report.ga_order,
                "isomorphic": report.isomorphic,
                "witness": report.witness.map(|w| w.map),
            });
            Ok(Output::json(&value, report.isomorphic))
        }
        Envelope::VerifyU { n, m } => {
            let r = verify_u_reduction(n, m)?;
            Ok(Output::json(&with_passes(&r, r.passes()), r.passes()))
        }
        Envelope::VerifyR2n { n } => {
            let r = verify_r2n(n)?;
            Ok(Output::json(&with_passes(&r, r.passes()), r.passes()))
        }
    }
}

fn default_names(n: usize) -> Vec<String> {
    const SHORT: [&str; 4] = ["x", "y", "z", "w"];
    if n <= SHORT.len() {
        SHORT[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (0..n).map(|g| format!("x{g}")).collect()
    }
}

/// `((g₀ *^{ε₁} g₁) *^{ε₂} g₂) …` as a word in the input syntax.
fn left_normed(e: &FreeRackElement, names: &[String]) -> String {
    e.word
        .letters()
        .iter()
        .fold(QWord::gen(e.base), |acc, l| if l.inverse { QWord::op_inv(acc, QWord::gen(l.gen)) } else { QWord::op(acc, QWord::gen(l.gen)) })
        .render(names)
}

fn free(what: Free) -> Result<Output, CliError> {
    match what {
        Free::Fq { n, depth } => {
            let names = default_names(n);
            let elems = free_quandle_elements(n, depth)?;
            let list: Vec<Value> = elems
                .iter()
                .map(|e| json!({ "base": names[e.base()], "word": e.word().render(&|g| names[g].clone()) }))
                .collect();
            Ok(Output::json(&json!({ "count": list.len(), "elements": list }), true))
        }
        Free::Product { first, second, envelope } => {
            let p1 = read_json::<PresentationFile>(&first)?.to_presentation()?;
            let p2 = read_json::<PresentationFile>(&second)?.to_presentation()?;
            let product = presentation_free_product(&p1, &p2)?;
            Ok(if envelope {
                Output::json(&GroupPresentationFile::from_presentation(&envelope_of(&product)), true)
            } else {
                Output::json(&PresentationFile::from_presentation(&product), true)
            })
        }
        Free::Closure { file, depth } => {
            let p = read_json::<PresentationFile>(&file)?.to_presentation()?;
            let est = bounded_closure(&p, depth)?;
            let classes: Vec<Vec<String>> =
                est.classes.iter().map(|c| c.iter().map(|&i| left_normed(&est.words[i], &p.names)).collect()).collect();
            let value = json!({
                "depth": est.depth,
                "words": est.words.len(),
                "lower": est.lower,
                "upper": est.upper,
                "exact": est.exact().is_some(),
                "models_used": est.models_used,
                "classes": classes,
            });
            Ok(Output::json(&value, true))
        }
    }
}

fn classify(order: usize, orbits: Option<usize>, connected: Option<bool>, format: Format) -> Result<Output, CliError> {
    let found = enumerate_quandles(order, &Filters { orbit_count: orbits, connected })?;
    Ok(match format {
        Format::Json => {
            let tables: Vec<Vec<Vec<usize>>> = found.iter().map(FiniteQuandle::table).collect();
            Output::json(&json!({ "order": order, "count": found.len(), "quandles": tables }), true)
        }
        Format::Table => {
            let mut text = format!("{} quandles of order {order}\n", found.len());
            for (k, q) in found.iter().enumerate() {
                text.push_str(&format!("\n#{k}\n{}", render::quandle_table(q)));
            }
            Output { text, ok: true }
        }
    })
}

fn status_name(s: ScanStatus) -> &'static str {
    match s {
        ScanStatus::Consistent => "consistent",
        ScanStatus::Unresolved => "unresolved",
        ScanStatus::Contradiction => "contradiction",
    }
}

fn entry_json(e: &ScanEntry) -> Value {
    json!({
        "order": e.order,
        "index": e.index,
        "table": e.quandle.table(),
        "abelianization": abelian_json(&e.abelianization),
        "u": e.u.map(|(n, m)| [n, m]),
        "predicts_z2": e.predicts_z2,
        "quotient": e.quotient.as_ref().map(|q| json!({ "group": q.group_name, "images": q.images })),
        "certified_not_z2": e.certified_not_z2(),
        "status": status_name(e.status),
    })
}

fn scan_json(r: &ScanReport) -> Value {
    json!({
        "max_order": r.max_order,
        "quandles": r.entries.len(),
        "contradictions": r.contradictions(),
        "unresolved": r.unresolved().count(),
        "entries": r.entries.iter().map(entry_json).collect::<Vec<_>>(),
    })
}

fn scan_table(r: &ScanReport) -> String {
    let rows: Vec<Vec<String>> = r
        .entries
        .iter()
        .map(|e| {
            let ab = &e.abelianization;
            let mut ab_text = format!("Z^{}", ab.free_rank);
            for t in &ab.torsion {
                ab_text.push_str(&format!(" x Z/{t}"));
            }
            vec![
                e.order.to_string(),
                e.index.to_string(),
                ab_text,
                e.u.map_or("-".into(), |(n, m)| format!("U({n},{m})")),
                if e.predicts_z2 { "Z^2" } else { "not Z^2" }.into(),
                e.quotient.as_ref().map_or("-".into(), |q| q.group_name.clone()),
                status_name(e.status).into(),
            ]
        })
        .collect();
    let mut text = render::columns(&["order", "#", "abelianization", "U(n,m)", "predicted", "quotient", "status"], &rows);
    text.push_str(&format!(
        "\n{} quandles, {} contradictions, {} unresolved\n",
        r.entries.len(),
        r.contradictions(),
        r.unresolved().count()
    ));
    text
}

/// Writes `output` and converts the verdict into an exit status.
pub fn finish(result: Result<Output, CliError>) -> u8 {
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("qf: {e}");
            e.exit_code()
        }
    }
}

