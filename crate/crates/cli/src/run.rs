use std::collections::HashMap;

use liouville_core::kirby::{
    branched_cover_diagram, lens_l21_base, serialize_diagram, surgery_cobordism_diagram, KirbyDiagram,
};
use liouville_core::surgery::{
    branched_cover, catalog_M_nk, contact_surgery, describe, fibered_manifold, liouville_sum, open_book_descriptor,
    reduce_word, FillabilityFlags, HandleCount, Hypersurface, Letter, ManifoldDescriptor, MonodromyWord, OpenBook,
    PageSpec, Ribbon, SphereRef, Tri,
};

use crate::report::Report;
use crate::scenario::{Check, ErrorCode, Fill, KirbySpec, Pos, Scenario, ScenarioError, Stmt};
use crate::verify::{self, Settings};

/// Result of replaying a scenario: the report and the diagram files it asked
/// for, as (file name, contents).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOutput {
    pub report: Report,
    pub files: Vec<(String, String)>,
}

impl RunOutput {
    /// Exit status: nonzero iff a verify failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.report.failed())
    }
}

#[derive(Default)]
struct Env {
    pages: HashMap<String, PageSpec>,
    words: HashMap<String, MonodromyWord>,
    manifolds: HashMap<String, ManifoldDescriptor>,
    diagrams: HashMap<String, KirbyDiagram>,
}

fn runtime(pos: Pos, e: impl std::fmt::Display) -> ScenarioError {
    ScenarioError {
        code: ErrorCode::Runtime,
        pos,
        msg: e.to_string(),
    }
}

fn flags_for(fill: Fill) -> FillabilityFlags {
    let u = Tri::Unknown;
    match fill {
        Fill::Stein => FillabilityFlags::stein_fillable(),
        Fill::Exact => FillabilityFlags::exactly_fillable(),
        Fill::Strong => FillabilityFlags::new(u, Tri::True, u, u).expect("closed"),
        Fill::Weak => FillabilityFlags::new(Tri::True, u, u, u).expect("closed"),
        Fill::Unknown => FillabilityFlags::unknown(),
        Fill::None => FillabilityFlags::not_fillable(),
    }
}

fn fill_flag(f: &FillabilityFlags, level: Fill) -> Tri {
    match level {
        Fill::Stein => f.stein(),
        Fill::Exact => f.exactly(),
        Fill::Strong => f.symplectically(),
        _ => f.weakly(),
    }
}

fn fill_name(level: Fill) -> &'static str {
    match level {
        Fill::Stein => "stein",
        Fill::Exact => "exact",
        Fill::Strong => "strong",
        Fill::Weak => "weak",
        Fill::Unknown => "unknown",
        Fill::None => "none",
    }
}

fn result_lines(rep: &mut Report, op: &str, name: &str, m: &ManifoldDescriptor) {
    rep.info(format!("{op}.{name}"), describe(m));
    rep.info(format!("{op}.{name}.flags"), m.flags);
}

/// Executes the statements in order. Downstream errors stop the run and
/// carry the position of the statement that raised them.
pub fn run_scenario(s: &Scenario, settings: &Settings) -> Result<RunOutput, ScenarioError> {
    let mut env = Env::default();
    let mut out = RunOutput::default();
    for st in &s.statements {
        let pos = st.pos;
        let rt = |e: &dyn std::fmt::Display| runtime(pos, e);
        let manifold = |env: &Env, n: &str| {
            env.manifolds
                .get(n)
                .cloned()
                .ok_or_else(|| runtime(pos, format!("no manifold {n}")))
        };
        let page = |env: &Env, n: &str| {
            env.pages
                .get(n)
                .cloned()
                .ok_or_else(|| runtime(pos, format!("no page {n}")))
        };
        let word = |env: &Env, n: &str| {
            env.words
                .get(n)
                .cloned()
                .ok_or_else(|| runtime(pos, format!("no word {n}")))
        };
        let rep = &mut out.report;
        match &st.stmt {
            Stmt::Page {
                name,
                half_dim,
                handles,
                stein,
                spheres,
            } => {
                let h = handles
                    .as_ref()
                    .map(|v| v.iter().map(|&(index, count)| HandleCount { index, count }).collect());
                let p = PageSpec::new(name, *half_dim, h, *stein, spheres.clone()).map_err(|e| rt(&e))?;
                env.pages.insert(name.clone(), p);
            }
            Stmt::Word { name, letters } => {
                let w = reduce_word(letters.iter().map(|(l, e)| Letter::new(l, *e)));
                env.words.insert(name.clone(), w);
            }
            Stmt::OpenBook { name, page: p, word: w } => {
                let ob = OpenBook::new(page(&env, p)?, word(&env, w)?).map_err(|e| rt(&e))?;
                let m = open_book_descriptor(ob).map_err(|e| rt(&e))?;
                env.manifolds.insert(name.clone(), m);
            }
            Stmt::Catalog {
                name,
                title,
                dim,
                fill,
                ribbons,
                spheres,
            } => {
                let ribbons = ribbons
                    .iter()
                    .map(|r| {
                        page(&env, r).map(|p| Ribbon {
                            label: r.clone(),
                            stein: p.stein(),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let spheres = spheres.iter().map(|l| SphereRef::plain(l, false)).collect();
                let m =
                    ManifoldDescriptor::catalog(title, *dim, flags_for(*fill), spheres, ribbons).map_err(|e| rt(&e))?;
                env.manifolds.insert(name.clone(), m);
            }
            Stmt::Mnk { name, n, k } => {
                let m = catalog_M_nk(*n, *k).map_err(|e| rt(&e))?;
                env.manifolds.insert(name.clone(), m);
            }
            Stmt::Sum { name, left, right } => {
                let m = liouville_sum(&manifold(&env, left)?, &manifold(&env, right)?).map_err(|e| rt(&e))?;
                result_lines(rep, "sum", name, &m);
                env.manifolds.insert(name.clone(), m);
            }
            Stmt::Surgery {
                name,
                target,
                sphere,
                k,
                param,
            } => {
                let m = contact_surgery(&manifold(&env, target)?, sphere, *k, param).map_err(|e| rt(&e))?;
                result_lines(rep, "surgery", name, &m);
                env.manifolds.insert(name.clone(), m);
            }
            Stmt::Cover { name, target, q, along } => {
                let hyp = along
                    .as_ref()
                    .map_or(Hypersurface::Page, |r| Hypersurface::Ribbon(r.clone()));
                let m = branched_cover(&manifold(&env, target)?, &hyp, *q).map_err(|e| rt(&e))?;
                result_lines(rep, "cover", name, &m);
                env.manifolds.insert(name.clone(), m);
            }
            Stmt::Fibered {
                name,
                page: p,
                phi,
                psi,
            } => {
                let m = fibered_manifold(&page(&env, p)?, &word(&env, phi)?, &word(&env, psi)?).map_err(|e| rt(&e))?;
                result_lines(rep, "fibered", name, &m);
                env.manifolds.insert(name.clone(), m);
            }
            Stmt::Kirby { name, spec, out: file } => {
                let d = match spec {
                    KirbySpec::Cover { page: p, q, l21_base } => {
                        let base = if *l21_base { lens_l21_base() } else { Vec::new() };
                        branched_cover_diagram(&page(&env, p)?, &base, *q)
                    }
                    KirbySpec::Surgery { k } => surgery_cobordism_diagram(*k),
                }
                .map_err(|e| rt(&e))?;
                rep.info(format!("kirby.{name}.dotted"), d.dotted().len());
                rep.info(format!("kirby.{name}.two_handles"), d.two_handles().len());
                for (i, w) in d.word_strings().iter().enumerate() {
                    rep.info(format!("kirby.{name}.H{}", i + 1), w);
                }
                if let Some(f) = file {
                    if out.files.iter().any(|(g, _)| g == f) {
                        return Err(runtime(pos, format!("output {f} written twice")));
                    }
                    rep.info(format!("kirby.{name}.file"), f);
                    out.files.push((f.clone(), serialize_diagram(&d)));
                }
                env.diagrams.insert(name.clone(), d);
            }
            Stmt::Verify(check) => match check {
                Check::Equal(a, b) => {
                    let eq = manifold(&env, a)?.word_equal(&manifold(&env, b)?);
                    rep.check(
                        format!("verify.equal.{a}.{b}"),
                        if eq { "equal" } else { "different" },
                        eq,
                    );
                }
                Check::Fillable(m, level) => {
                    let t = fill_flag(&manifold(&env, m)?.flags, *level);
                    rep.check(format!("verify.fillable.{m}.{}", fill_name(*level)), t, t == Tri::True);
                }
                Check::Handles { diagram, dotted, two } => {
                    let d = env
                        .diagrams
                        .get(diagram)
                        .ok_or_else(|| runtime(pos, format!("no diagram {diagram}")))?;
                    let got = (d.dotted().len(), d.two_handles().len());
                    rep.check(
                        format!("verify.handles.{diagram}"),
                        format!("dotted={} two_handles={}", got.0, got.1),
                        got == (*dotted, *two),
                    );
                }
                Check::Twist { n } => rep.extend(verify::twist_all(*n, settings).map_err(|e| rt(&e))?),
                Check::Forms => rep.extend(verify::forms_all(settings).map_err(|e| rt(&e))?),
            },
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    fn run(text: &str) -> Result<RunOutput, ScenarioError> {
        run_scenario(&parse_scenario(text).unwrap(), &Settings::default())
    }

    #[test]
    fn empty_scenario() {
        let o = run("").unwrap();
        assert_eq!(o.report.to_text(), "");
        assert_eq!(o.exit_code(), 0);
    }

    #[test]
    fn composed_twists_equal() {
        let o = run("page D dim=2 handles=[0:1,1:1] stein=true spheres=[L]\n\
             word p = L^2\nword q = L^3\nword pq = L^5\n\
             openbook A = (D, p)\nopenbook B = (D, q)\nopenbook C = (D, pq)\n\
             sum AB = A B\nverify equal AB C\nverify equal A C\n")
        .unwrap();
        let t = o.report.to_text();
        assert!(t.contains("verify.equal.AB.C\tequal\t-\tPASS\n"), "{t}");
        assert!(t.contains("verify.equal.A.C\tdifferent\t-\tFAIL\n"));
        assert_eq!(o.exit_code(), 1);
    }

    #[test]
    fn surgery_on_standard_sphere() {
        let o = run("manifold S = mnk 1 1\npage Q dim=2 spheres=[L]\nsurgery A = S L -1\nmanifold T = mnk 1 2\nverify equal A T\n")
            .unwrap();
        assert_eq!(o.exit_code(), 0, "{}", o.report.to_text());
    }

    #[test]
    fn runtime_errors_are_positioned() {
        let e = run("manifold S = mnk 1 1\npage Q dim=2 spheres=[M]\nsurgery A = S M 2\n").unwrap_err();
        assert_eq!(e.code, ErrorCode::Runtime);
        assert_eq!(e.pos, Pos { line: 3, col: 1 });
        let e = run("page P dim=2 stein=true\n").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 1 });
    }

    #[test]
    fn twist_verify_in_scenario() {
        let s = Settings {
            samples: Some(5),
            ..Settings::default()
        };
        let o = run_scenario(&parse_scenario("verify twist n=2\n").unwrap(), &s).unwrap();
        let t = o.report.to_text();
        assert!(t.starts_with("twist.n2.pullback_max_dev\t"));
        assert!(t.contains("isotopy.n2.phi.unit_sphere_max_displacement"));
        assert_eq!(o.exit_code(), 0, "{t}");
    }

    #[test]
    fn duplicate_outputs_rejected() {
        let e = run("kirby A = surgery 1 out=x.kirby\nkirby B = surgery 2 out=x.kirby\n").unwrap_err();
        assert_eq!(e.pos.line, 2);
    }
}
