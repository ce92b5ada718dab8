//! One function per subcommand.

use serde_json::{json, Value};
use vortex_core::axioms::{check_axioms, AxiomFamily, AxiomReport, Descriptive, Lifted};
use vortex_core::conjugacy::{search_conjugacy, transfer_fixed_subsets, transfer_iterates};
use vortex_core::dynamics::{
    scan_fixed_subsets, tag_counts, vortex_fixed_point_check, FixedPointOutcome, FixedTag,
};
use vortex_core::freegroup::{vortex_group, GeneratorBasis, VortexGroup};
use vortex_core::maps::{
    check_continuity, check_isomorphism, invariance_closure_properties, invariant_subsets,
    ContinuityMode, PropertyCheck, PAIR_ORACLE_LIMIT,
};
use vortex_core::mean::is_amenable_witness;
use vortex_core::svg::render_svg;
use vortex_core::{ConjugacyMode, DynamicalSystem, EnumerationCap, PlanarVortex, PointMap};

use crate::report::{set_text, Check, Report, Status};
use crate::workspace::{GroupDef, Ground, LookupError, Workspace};
use crate::{Cli, CliError, Command, Format};

/// A report, plus raw text printed instead of it (SVG on stdout).
pub struct Outcome {
    pub report: Report,
    pub raw: Option<String>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, raw: None }
    }
}

pub fn dispatch(cli: &Cli, ws: &Workspace) -> Result<Outcome, CliError> {
    let cap = match cli.n_max {
        Some(n) => EnumerationCap::new(n).map_err(|e| CliError::Usage(e.to_string()))?,
        None => EnumerationCap::default(),
    };
    match cli.command {
        Command::Validate => validate(cli, ws).map(Outcome::from),
        Command::Axioms => axioms(cli, ws, cap).map(Outcome::from),
        Command::Continuity => continuity(cli, ws, cap).map(Outcome::from),
        Command::Fixed => fixed(cli, ws, cap).map(Outcome::from),
        Command::Conjugacy => conjugacy(cli, ws, cap).map(Outcome::from),
        Command::Amenable => amenable(cli, ws).map(Outcome::from),
        Command::Render => render(cli, ws),
    }
}

fn require<'a>(
    value: &'a Option<String>,
    flag: &str,
    command: Command,
) -> Result<&'a str, CliError> {
    value
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("{} needs --{flag}", command.name())))
}

fn build_group(
    v: &PlanarVortex,
    basis: Vec<u32>,
    homes: Option<Vec<Option<usize>>>,
) -> vortex_core::Result<VortexGroup> {
    let b = match homes {
        Some(h) => GeneratorBasis::with_homes(basis, h)?,
        None => GeneratorBasis::new(basis)?,
    };
    vortex_group(v, &b)
}

fn validate(cli: &Cli, ws: &Workspace) -> Result<Report, CliError> {
    if let Some(name) = &cli.complex {
        ws.complex(name)?;
    }
    let selected = |name: &str| cli.complex.as_deref().is_none_or(|c| c == name);
    let mut checks = vec![Check::new(
        "workspace",
        Status::Pass,
        format!(
            "{} spaces, {} probes, {} complexes, {} maps, {} groups",
            ws.spaces.len(),
            ws.probes.len(),
            ws.complexes.len(),
            ws.maps.len(),
            ws.groups.len()
        ),
    )];
    let mut complexes = Vec::new();
    for c in ws.complexes.iter().filter(|c| selected(&c.name)) {
        match ws.vortex(&c.name) {
            Ok(v) => {
                let hole = if v.has_hole() {
                    ", innermost cycle unfilled"
                } else {
                    ""
                };
                checks.push(Check::new(
                    format!("complex {}", c.name),
                    Status::Pass,
                    format!(
                        "{} vertices, {} cycles, {} bridges{hole}",
                        v.len(),
                        v.cycles().len(),
                        v.bridges().len()
                    ),
                ));
                complexes.push(json!({
                    "name": c.name,
                    "valid": true,
                    "vertices": v.len(),
                    "cycles": v.cycles().len(),
                    "bridges": v.bridges().len(),
                    "has_hole": v.has_hole(),
                }));
            }
            Err(LookupError::InvalidComplex { error, .. }) => {
                checks.push(Check::new(
                    format!("complex {}", c.name),
                    Status::Fail,
                    format!("{}: {error}", error.tag()),
                ));
                complexes.push(json!({
                    "name": c.name,
                    "valid": false,
                    "tag": error.tag(),
                    "error": error.to_string(),
                }));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let mut groups = Vec::new();
    for g in ws.groups.iter().filter(|g| selected(&g.complex)) {
        let name = format!("group {}", g.name);
        let built = ws
            .vortex(&g.complex)
            .map_err(|e| e.to_string())
            .and_then(|v| {
                build_group(&v, g.basis.clone(), g.homes.clone()).map_err(|e| e.to_string())
            });
        match built {
            Ok(group) => {
                checks.push(Check::new(
                    name,
                    Status::Pass,
                    format!("order {}", group.order()),
                ));
                groups.push(json!({"name": g.name, "complex": g.complex, "order": group.order()}));
            }
            Err(msg) => {
                checks.push(Check::new(name, Status::Fail, msg.clone()));
                groups.push(json!({"name": g.name, "complex": g.complex, "error": msg}));
            }
        }
    }
    let spaces: Vec<Value> = ws
        .spaces
        .iter()
        .map(|s| json!({"name": s.name, "points": s.points.len(), "edges": s.edges.len(), "probe": s.probe}))
        .collect();
    let maps: Vec<Value> = ws
        .maps
        .iter()
        .map(|m| json!({"name": m.name, "domain": m.domain, "codomain": m.codomain}))
        .collect();
    let details = json!({"spaces": spaces, "complexes": complexes, "maps": maps, "groups": groups});
    let subject = cli.complex.clone().unwrap_or_else(|| "workspace".into());
    Ok(Report::new("validate", subject, checks, details))
}

fn witness_json(g: &Ground, w: &vortex_core::axioms::AxiomWitness) -> Value {
    let mut v = json!({"a": g.ids_of(w.a), "b": g.ids_of(w.b)});
    if let Some(c) = w.c {
        v["c"] = json!(g.ids_of(c));
    }
    v
}

fn axiom_checks(g: &Ground, report: &AxiomReport, checks: &mut Vec<Check>) -> Value {
    let mut rows = Vec::new();
    for r in &report.results {
        let summary = match &r.witness {
            None => String::new(),
            Some(w) => {
                let mut s = format!(
                    "A = {}, B = {}",
                    set_text(&g.ids_of(w.a)),
                    set_text(&g.ids_of(w.b))
                );
                if let Some(c) = w.c {
                    s.push_str(&format!(", C = {}", set_text(&g.ids_of(c))));
                }
                s
            }
        };
        checks.push(Check::new(r.axiom, Status::from_bool(r.passed()), summary));
        rows.push(json!({
            "axiom": r.axiom,
            "status": Status::from_bool(r.passed()),
            "witness": r.witness.as_ref().map(|w| witness_json(g, w)),
        }));
    }
    Value::Array(rows)
}

fn axioms(cli: &Cli, ws: &Workspace, cap: EnumerationCap) -> Result<Report, CliError> {
    let name = match (&cli.space, &cli.complex) {
        (Some(s), _) | (None, Some(s)) => s.as_str(),
        (None, None) => return Err(CliError::Usage("axioms needs --space".into())),
    };
    let g = ws.ground(name)?;
    let mut checks = Vec::new();
    let cech = check_axioms(&Lifted(&g.space), AxiomFamily::Cech, cap)?;
    let cech_rows = axiom_checks(&g, &cech, &mut checks);
    let desc_rows = match g.space.probe() {
        Some(probe) => {
            let rel = Descriptive::new(&g.space)?;
            let report = check_axioms(&rel, AxiomFamily::Descriptive(probe), cap)?;
            axiom_checks(&g, &report, &mut checks)
        }
        None => Value::Null,
    };
    let details = json!({"space": name, "points": g.space.len(), "cech": cech_rows, "descriptive": desc_rows});
    Ok(Report::new("axioms", name, checks, details))
}

fn mode_name(mode: ContinuityMode) -> &'static str {
    match mode {
        ContinuityMode::Proximal => "proximal",
        ContinuityMode::Descriptive => "descriptive",
    }
}

fn continuity(cli: &Cli, ws: &Workspace, cap: EnumerationCap) -> Result<Report, CliError> {
    let name = require(&cli.map, "map", Command::Continuity)?;
    let (f, dom, cod) = ws.point_map(name)?;
    let modes = match cli.mode.as_deref() {
        None => {
            let mut m = vec![ContinuityMode::Proximal];
            if dom.space.probe().is_some() && cod.space.probe().is_some() {
                m.push(ContinuityMode::Descriptive);
            }
            m
        }
        Some("proximal") => vec![ContinuityMode::Proximal],
        Some("descriptive") => vec![ContinuityMode::Descriptive],
        Some(other) => {
            return Err(CliError::Usage(format!(
                "continuity mode must be proximal or descriptive, got {other:?}"
            )))
        }
    };
    let id = |g: &Ground, p: usize| g.ids[p];
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for mode in modes {
        let r = check_continuity(&f, &dom.space, &cod.space, mode, cap)?;
        let (status, summary) = if !r.consistent() {
            (
                Status::Fail,
                "pointwise and subset-pair verdicts disagree".to_string(),
            )
        } else if let Some((a, b)) = r.pointwise {
            let relation = match mode {
                ContinuityMode::Proximal => "are near",
                ContinuityMode::Descriptive => "share a description",
            };
            (
                Status::Fail,
                format!(
                    "{} and {} {relation} but their images {} and {} do not",
                    id(&dom, a),
                    id(&dom, b),
                    id(&cod, f.apply(a)),
                    id(&cod, f.apply(b))
                ),
            )
        } else if r.oracle_ran() {
            (
                Status::Pass,
                "pointwise check confirmed by the subset-pair scan".to_string(),
            )
        } else {
            (
                Status::Pass,
                format!(
                    "pointwise check; subset-pair scan skipped above {PAIR_ORACLE_LIMIT} points"
                ),
            )
        };
        checks.push(Check::new(
            format!("{} continuity", mode_name(mode)),
            status,
            summary,
        ));
        let oracle_witness = r
            .exhaustive
            .flatten()
            .map(|w| json!({"a": dom.ids_of(w.a), "b": dom.ids_of(w.b)}));
        rows.push(json!({
            "mode": mode_name(mode),
            "status": status,
            "pointwise_witness": r.pointwise.map(|(a, b)| [id(&dom, a), id(&dom, b)]),
            "oracle_ran": r.oracle_ran(),
            "oracle_witness": oracle_witness,
        }));
    }
    let isomorphism = if f.is_bijective() && dom.space.len() == cod.space.len() {
        let mut iso = serde_json::Map::new();
        for mode in [ContinuityMode::Proximal, ContinuityMode::Descriptive] {
            if mode == ContinuityMode::Descriptive
                && (dom.space.probe().is_none() || cod.space.probe().is_none())
            {
                continue;
            }
            let r = check_isomorphism(&f, &dom.space, &cod.space, mode, cap)?;
            iso.insert(mode_name(mode).into(), json!(r.status));
        }
        Value::Object(iso)
    } else {
        Value::Null
    };
    let details = json!({
        "map": name,
        "domain": dom.name,
        "codomain": cod.name,
        "bijective": f.is_bijective(),
        "results": rows,
        "isomorphism": isomorphism,
    });
    Ok(Report::new("continuity", name, checks, details))
}

fn self_map(ws: &Workspace, name: &str) -> Result<(PointMap, Ground), CliError> {
    let def = ws.map(name)?;
    if def.domain != def.codomain {
        return Err(CliError::Usage(format!("map {name:?} is not a self-map")));
    }
    let (f, dom, _) = ws.point_map(name)?;
    Ok((f, dom))
}

fn property_summary(name: &str, p: &PropertyCheck, g: &Ground) -> Option<String> {
    let (members, set) = p.witness.as_ref()?;
    let parts: Vec<String> = members.iter().map(|m| set_text(&g.ids_of(*m))).collect();
    Some(format!(
        "{name} of {} is {}, which is not invariant",
        parts.join(" and "),
        set_text(&g.ids_of(*set))
    ))
}

const CLASS_LIMIT: usize = 256;

fn fixed(cli: &Cli, ws: &Workspace, cap: EnumerationCap) -> Result<Report, CliError> {
    let name = require(&cli.map, "map", Command::Fixed)?;
    let (f, g) = self_map(ws, name)?;
    let n = g.space.len();
    if g.space.probe().is_none() && g.vortex.is_none() {
        return Err(CliError::Usage(format!(
            "fixed needs a probe on {:?} or a complex domain",
            g.name
        )));
    }
    let mut checks = Vec::new();
    let mut details = serde_json::Map::new();
    details.insert("map".into(), json!(name));
    details.insert("domain".into(), json!(g.name));
    if g.space.probe().is_some() {
        let scan = scan_fixed_subsets(&f, &g.space, None, cap)?;
        let counts = tag_counts(&scan);
        let summary: Vec<String> = counts
            .iter()
            .map(|(t, c)| format!("{} {c}", t.as_str()))
            .collect();
        checks.push(Check::new(
            "fixed-subset scan",
            Status::Pass,
            summary.join(", "),
        ));
        let tagged: Vec<Value> = scan
            .iter()
            .filter(|c| c.tag != FixedTag::None)
            .take(CLASS_LIMIT)
            .map(|c| {
                json!({
                    "subset": g.ids_of(c.subset),
                    "tag": c.tag.as_str(),
                    "witness_n": c.witness_n,
                    "point_witness": c.point_witness.map(|p| g.ids[p]),
                })
            })
            .collect();
        let tagged_total = scan.iter().filter(|c| c.tag != FixedTag::None).count();
        details.insert(
            "tag_counts".into(),
            counts
                .iter()
                .map(|(t, c)| (t.as_str().to_string(), json!(c)))
                .collect(),
        );
        details.insert("tagged".into(), json!(tagged));
        details.insert("tagged_truncated".into(), json!(tagged_total > CLASS_LIMIT));

        if n <= PAIR_ORACLE_LIMIT {
            let family = invariant_subsets(&f, &g.space, cap)?;
            let closure = invariance_closure_properties(&f, &g.space, &family)?;
            let failure = [
                ("union", &closure.pairwise_union),
                ("intersection", &closure.pairwise_intersection),
                ("union", &closure.family_union),
                ("intersection", &closure.family_intersection),
                ("descriptive closure", &closure.closure),
            ]
            .iter()
            .find_map(|(label, p)| property_summary(label, p, &g));
            let summary = failure.unwrap_or_else(|| {
                format!(
                    "{} invariant subsets; unions, intersections and descriptive closures stay invariant",
                    family.len()
                )
            });
            checks.push(Check::new(
                "invariant-set closure",
                closure.verdict.into(),
                summary,
            ));
            let prop = |p: &PropertyCheck| {
                json!({
                    "status": Status::from(p.verdict),
                    "checked": p.checked,
                    "witness": p.witness.as_ref().map(|(m, s)| json!({
                        "members": m.iter().map(|x| g.ids_of(*x)).collect::<Vec<_>>(),
                        "set": g.ids_of(*s),
                    })),
                })
            };
            details.insert(
                "closure".into(),
                json!({
                    "invariant_subsets": family.len(),
                    "descriptively_continuous": closure.descriptively_continuous,
                    "pairwise_union": prop(&closure.pairwise_union),
                    "pairwise_intersection": prop(&closure.pairwise_intersection),
                    "family_union": prop(&closure.family_union),
                    "family_intersection": prop(&closure.family_intersection),
                    "descriptive_closure": prop(&closure.closure),
                    "pairwise_descriptive_intersection": prop(&closure.pairwise_desc_intersection),
                }),
            );
        } else {
            details.insert(
                "closure".into(),
                json!(format!("skipped above {PAIR_ORACLE_LIMIT} points")),
            );
        }
    }
    if let Some(v) = &g.vortex {
        let r = vortex_fixed_point_check(v, &g.space, &f, cap, cli.seed)?;
        let (status, summary) = match r.outcome {
            FixedPointOutcome::Consistent => (
                Status::Pass,
                format!("fixed vertices {}", set_text(&r.fixed_vertices)),
            ),
            FixedPointOutcome::CombinatorialCounterexample => (
                Status::Fail,
                format!(
                    "{}: {}",
                    r.outcome.as_str(),
                    r.note.unwrap_or("no fixed vertex")
                ),
            ),
            FixedPointOutcome::Inapplicable => (
                Status::Inapplicable,
                "f is not proximally continuous".to_string(),
            ),
        };
        checks.push(Check::new("fixed point", status, summary));
        details.insert(
            "fixed_point".into(),
            json!({
                "outcome": r.outcome.as_str(),
                "fixed_vertices": r.fixed_vertices,
                "whole_space_fixed": r.whole_space_fixed,
                "fixed_subsets": r.fixed_subsets,
                "first_fixed_subset": r.first_fixed_subset.map(|s| g.ids_of(s)),
                "descriptively_fixed_subsets": r.desc_fixed_subsets,
                "scanned_subsets": r.scanned_subsets,
                "exhaustive": r.exhaustive,
                "note": r.note,
            }),
        );
    }
    Ok(Report::new("fixed", name, checks, Value::Object(details)))
}

fn conjugacy(cli: &Cli, ws: &Workspace, cap: EnumerationCap) -> Result<Report, CliError> {
    let fname = require(&cli.map, "map", Command::Conjugacy)?;
    let gname = require(&cli.map2, "map2", Command::Conjugacy)?;
    let mode = match cli.mode.as_deref() {
        None => ConjugacyMode::Exact,
        Some(m) => ConjugacyMode::parse(m)
            .ok_or_else(|| CliError::Usage(format!("unknown conjugacy mode {m:?}")))?,
    };
    let (f, dx) = self_map(ws, fname)?;
    let (g, dy) = self_map(ws, gname)?;
    let xs = DynamicalSystem::new(&dx.space, &f)?;
    let ys = DynamicalSystem::new(&dy.space, &g)?;
    let found = search_conjugacy(xs, ys, mode, cap, cli.seed)?;
    let subject = format!("{fname} {gname} {}", mode.as_str());
    let mut checks = Vec::new();
    let mut details = serde_json::Map::new();
    details.insert("mode".into(), json!(mode.as_str()));
    details.insert("f".into(), json!(fname));
    details.insert("g".into(), json!(gname));
    details.insert("tried".into(), json!(found.tried));
    let Some(cert) = found.certificate else {
        let reason = found.reason.unwrap_or_default();
        let inapplicable = reason.contains("not continuous");
        let (status, result) = if inapplicable {
            (Status::Inapplicable, "INAPPLICABLE")
        } else {
            (Status::Fail, "NONE")
        };
        checks.push(Check::new(
            "conjugacy",
            status,
            format!("{result}: {reason} ({} bijections tried)", found.tried),
        ));
        details.insert("result".into(), json!(result));
        details.insert("reason".into(), json!(reason));
        details.insert("certificate".into(), Value::Null);
        return Ok(Report::new(
            "conjugacy",
            subject,
            checks,
            Value::Object(details),
        ));
    };
    let h = PointMap::new(dy.space.len(), cert.h.clone())?;
    let pairs: Vec<[u32; 2]> = (0..h.domain_len())
        .map(|p| [dx.ids[p], dy.ids[h.apply(p)]])
        .collect();
    let h_text: Vec<String> = pairs.iter().map(|[a, b]| format!("{a}->{b}")).collect();
    checks.push(Check::new(
        "conjugacy",
        Status::Pass,
        format!("h = {}", h_text.join(", ")),
    ));
    details.insert("result".into(), json!("FOUND"));
    details.insert(
        "certificate".into(),
        json!({
            "h": pairs,
            "checked_subsets": cert.checked_subsets,
            "exhaustive": cert.exhaustive,
            "diagram": cert.diagram.as_ref().map(|d| d.passed()),
            "inverse": cert.inverse.as_ref().map(|i| json!({
                "passed": i.passed,
                "witness": i.witness.map(|s| dy.ids_of(s)),
            })),
            "descriptive_intersection": cert.desc_intersection.as_ref().map(|d| json!({
                "nonempty": d.nonempty,
                "first_empty": d.first_empty.map(|s| dx.ids_of(s)),
            })),
        }),
    );

    let t = transfer_iterates(xs, ys, &h, mode, cli.depth, cap, cli.seed)?;
    let summary = match t.witness {
        Some((a, k)) => format!("fails at A = {}, n = {k}", set_text(&dx.ids_of(a))),
        None => format!("1 <= n <= {} over {} subsets", t.max_n, t.checked_subsets),
    };
    checks.push(Check::new("iterate transfer", t.verdict.into(), summary));
    details.insert(
        "transfer".into(),
        json!({
            "status": Status::from(t.verdict),
            "max_n": t.max_n,
            "checked_subsets": t.checked_subsets,
            "exhaustive": t.exhaustive,
            "witness": t.witness.map(|(a, k)| json!({"subset": dx.ids_of(a), "n": k})),
        }),
    );

    if mode == ConjugacyMode::Descriptive {
        let ft = transfer_fixed_subsets(xs, ys, &h, cap)?;
        let summary = match &ft.mismatch {
            Some(m) => format!(
                "{} is {} but its image {} is {}",
                set_text(&dx.ids_of(m.source.subset)),
                m.source.tag.as_str(),
                set_text(&dy.ids_of(m.image.subset)),
                m.image.tag.as_str()
            ),
            None => {
                let c: Vec<String> = ft
                    .domain_counts
                    .iter()
                    .map(|(t, c)| format!("{} {c}", t.as_str()))
                    .collect();
                c.join(", ")
            }
        };
        checks.push(Check::new(
            "fixed-subset transfer",
            ft.verdict.into(),
            summary,
        ));
        let counts = |v: &[(FixedTag, usize)]| -> Value {
            v.iter()
                .map(|(t, c)| (t.as_str().to_string(), json!(c)))
                .collect()
        };
        details.insert(
            "fixed_transfer".into(),
            json!({
                "status": Status::from(ft.verdict),
                "checked_subsets": ft.checked_subsets,
                "domain_counts": counts(&ft.domain_counts),
                "codomain_counts": counts(&ft.codomain_counts),
                "families_bijective": ft.families_bijective,
            }),
        );
    }
    Ok(Report::new(
        "conjugacy",
        subject,
        checks,
        Value::Object(details),
    ))
}

fn amenable(cli: &Cli, ws: &Workspace) -> Result<Report, CliError> {
    let mut targets: Vec<GroupDef> = ws
        .groups
        .iter()
        .filter(|g| cli.complex.as_deref().is_none_or(|c| c == g.complex))
        .cloned()
        .collect();
    if targets.is_empty() {
        let Some(c) = &cli.complex else {
            return Err(CliError::Usage("no groups declared; pass --complex".into()));
        };
        let v = ws.vortex(c)?;
        targets.push(GroupDef {
            name: "default".into(),
            complex: c.clone(),
            basis: v.cycles().iter().map(|cy| cy.ring()[0]).collect(),
            homes: Some((0..v.cycles().len()).map(Some).collect()),
        });
    }
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for GroupDef {
        name,
        complex,
        basis,
        homes,
    } in targets
    {
        let label = format!("group {name}");
        let v = ws.vortex(&complex)?;
        let group = match build_group(&v, basis.clone(), homes) {
            Ok(g) => g,
            Err(e) => {
                checks.push(Check::new(label, Status::Fail, e.to_string()));
                rows.push(json!({"name": name, "complex": complex, "error": e.to_string()}));
                continue;
            }
        };
        let r = is_amenable_witness(group.table(), &[], cli.seed)?;
        checks.push(Check::new(
            label,
            Status::from_bool(r.amenable),
            format!(
                "order {}; uniform mean invariant on the indicator basis and {} functions",
                r.order, r.checked_functions
            ),
        ));
        rows.push(json!({
            "name": name,
            "complex": complex,
            "generators": basis,
            "homes": group.homes(),
            "token_cycles": group.token_cycles(),
            "order": r.order,
            "abelian": group.table().is_abelian(),
            "mean": r.mean,
            "indicator_basis": Status::from_bool(r.indicator_basis.passed()),
            "checked_functions": r.checked_functions,
            "failures": r.failures.len(),
            "seed": r.seed,
            "argument": r.argument,
        }));
    }
    let subject = cli.complex.clone().unwrap_or_else(|| "workspace".into());
    Ok(Report::new(
        "amenable",
        subject,
        checks,
        json!({"groups": rows}),
    ))
}

fn render(cli: &Cli, ws: &Workspace) -> Result<Outcome, CliError> {
    let name = require(&cli.complex, "complex", Command::Render)?;
    let v = match ws.vortex(name) {
        Ok(v) => v,
        Err(LookupError::InvalidComplex { error, .. }) => {
            let check = Check::new("render", Status::Fail, format!("{}: {error}", error.tag()));
            let details = json!({"complex": name, "tag": error.tag()});
            return Ok(Report::new("render", name, vec![check], details).into());
        }
        Err(e) => return Err(e.into()),
    };
    let svg = render_svg(&v, ws.quantum);
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &svg).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?;
            let check = Check::new(
                "render",
                Status::Pass,
                format!("wrote {} ({} bytes)", path.display(), svg.len()),
            );
            let details =
                json!({"complex": name, "out": path.display().to_string(), "bytes": svg.len()});
            Ok(Report::new("render", name, vec![check], details).into())
        }
        None if cli.format == Format::Text => Ok(Outcome {
            report: Report::new("render", name, Vec::new(), Value::Null),
            raw: Some(svg),
        }),
        None => {
            let check = Check::new("render", Status::Pass, format!("{} bytes", svg.len()));
            Ok(Report::new(
                "render",
                name,
                vec![check],
                json!({"complex": name, "svg": svg}),
            )
            .into())
        }
    }
}
