#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use vortex_core::axioms::{check_axioms, AxiomFamily, Descriptive, Lifted};
use vortex_core::conjugacy::{
    search_conjugacy, transfer_fixed_subsets, transfer_iterates, verify_conjugacy,
};
use vortex_core::dynamics::{vortex_fixed_point_check, FixedPointOutcome};
use vortex_core::freegroup::{vortex_group, GeneratorBasis};
use vortex_core::maps::{
    check_continuity, check_proximal_continuity, invariance_closure_properties, invariant_subsets,
    ContinuityMode, Verdict,
};
use vortex_core::mean::{
    check_indicator_basis, check_invariance, Arithmetic, BoundedFunction, Mean,
};
use vortex_core::svg::render_svg;
use vortex_core::{
    build_vortex, ConjugacyMode, DynamicalSystem, EnumerationCap, FeatureVector, PointMap,
    ProbeMap, ProximitySpace, Subset,
};

const C1_RELATIONS: usize = 200;
const C1_PROBES: usize = 200;
const C1_BUDGET: Duration = Duration::from_secs(10);
const C2_SPACES: usize = 100;
const C2_POINTS: usize = 5;
const C3_VORTEXES: usize = 50;
const C3_THETAS: usize = 3;
const C4_PAIRS: usize = 100;
const C4_DEPTH: usize = 6;
const C6_SYSTEMS: usize = 100;
const C8_MAPS: usize = 50;
const C8_ATTEMPTS: usize = 20_000;
const C9_RATE: f64 = 0.01;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn cap() -> EnumerationCap {
    EnumerationCap::default()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, run) in criteria {
        let o = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {id}: {} - {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

/// Lifted relations satisfy P.0-P.3 and probes satisfy dP.0-dP.3.
fn criterion_1() -> Outcome {
    let mut rng = rng(1);
    let start = Instant::now();
    let mut cech_fail = 0;
    for _ in 0..C1_RELATIONS {
        let n = rng.gen_range(1..=6);
        let p = rng.gen_range(0.0..=1.0);
        let x = random_space(&mut rng, n, p);
        if !check_axioms(&Lifted(&x), AxiomFamily::Cech, cap())
            .unwrap()
            .all_pass()
        {
            cech_fail += 1;
        }
    }
    let mut desc_fail = 0;
    for _ in 0..C1_PROBES {
        let n = rng.gen_range(1..=6);
        let x = random_probed(&mut rng, n);
        let rel = Descriptive::new(&x).unwrap();
        let probe = x.probe().unwrap();
        if !check_axioms(&rel, AxiomFamily::Descriptive(probe), cap())
            .unwrap()
            .all_pass()
        {
            desc_fail += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        cech_fail == 0 && desc_fail == 0 && elapsed < C1_BUDGET,
        format!(
            "{C1_RELATIONS} lifted relations, {cech_fail} failing; {C1_PROBES} probes, {desc_fail} failing; {:.2}s (budget {}s)",
            elapsed.as_secs_f64(),
            C1_BUDGET.as_secs()
        ),
    )
}

/// `A δ_Φ B ⟺ A ∩_Φ B ≠ ∅`, both sides also checked against labels directly.
fn criterion_2() -> Outcome {
    let mut rng = rng(2);
    let mut violations = 0;
    let mut pairs = 0;
    for _ in 0..C2_SPACES {
        let n = C2_POINTS;
        let labels = random_labels(&mut rng, n, 4);
        let x = random_space(&mut rng, n, 0.4)
            .with_probe(ProbeMap::from_labels(&labels))
            .unwrap();
        let described = |a: Subset| {
            a.points()
                .map(|p| labels[p])
                .collect::<std::collections::BTreeSet<_>>()
        };
        for a in Subset::all(n) {
            for b in Subset::all(n) {
                pairs += 1;
                let near = x.desc_near(a, b).unwrap();
                let meet = x.desc_intersection(a, b).unwrap();
                let (da, db) = (described(a), described(b));
                let naive_near = da.intersection(&db).next().is_some();
                let naive_meet: Vec<usize> = a
                    .union(b)
                    .points()
                    .filter(|&p| da.contains(&labels[p]) && db.contains(&labels[p]))
                    .collect();
                let ok = near == !meet.is_empty()
                    && near == naive_near
                    && meet.points().collect::<Vec<_>>() == naive_meet;
                if !ok {
                    violations += 1;
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!("{C2_SPACES} spaces, {pairs} pairs, {violations} violations"),
    )
}

fn random_rational(rng: &mut impl Rng) -> BigRational {
    let num: i64 = rng.gen_range(-1000..=1000);
    let den: i64 = rng.gen_range(1..=97);
    BigRational::new(num.into(), den.into())
}

/// Vortex groups have the predicted order and the uniform mean is invariant.
fn criterion_3() -> Outcome {
    let mut rng = rng(3);
    let mut bad_order = 0;
    let mut bad_basis = 0;
    let mut bad_theta = 0;
    for _ in 0..C3_VORTEXES {
        let cycles = rng.gen_range(2..=3);
        let v = random_vortex(&mut rng, cycles, (3, 8));
        let gens: Vec<u32> = v
            .cycles()
            .iter()
            .map(|c| c.ring()[rng.gen_range(0..c.len())])
            .collect();
        let homes = (0..gens.len()).map(Some).collect();
        let basis = GeneratorBasis::with_homes(gens, homes).unwrap();
        let g = vortex_group(&v, &basis).unwrap();
        let predicted: usize = v.cycles().iter().map(|c| c.len()).product();
        if g.order() != predicted {
            bad_order += 1;
        }
        if !check_indicator_basis(g.table(), &Mean::Uniform)
            .unwrap()
            .passed()
        {
            bad_basis += 1;
        }
        for _ in 0..C3_THETAS {
            let theta =
                BoundedFunction::new((0..g.order()).map(|_| random_rational(&mut rng)).collect());
            if !check_invariance(g.table(), &theta, &Mean::Uniform, Arithmetic::Exact)
                .unwrap()
                .passed()
            {
                bad_theta += 1;
            }
        }
    }
    outcome(
        bad_order + bad_basis + bad_theta == 0,
        format!(
            "{C3_VORTEXES} vortexes: {bad_order} order mismatches, {bad_basis} indicator-basis failures, {bad_theta} of {} exact invariance failures",
            C3_VORTEXES * C3_THETAS
        ),
    )
}

fn continuous_in(rng: &mut impl Rng, x: &ProximitySpace, mode: ContinuityMode) -> PointMap {
    let n = x.len();
    for _ in 0..64 {
        let f = PointMap::self_map(random_map(rng, n)).unwrap();
        if check_continuity(&f, x, x, mode, cap()).unwrap().passed() {
            return f;
        }
    }
    PointMap::constant(n, rng.gen_range(0..n)).unwrap()
}

fn conjugate(table: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut out = vec![0; table.len()];
    for p in 0..table.len() {
        out[perm[p]] = perm[table[p]];
    }
    out
}

fn duplicated(probe: &ProbeMap) -> ProbeMap {
    let table = probe
        .features()
        .iter()
        .map(|f| {
            let c = f.components();
            FeatureVector::new([c, c].concat())
        })
        .collect();
    ProbeMap::new(2 * probe.dimension(), probe.quantum(), table).unwrap()
}

struct Pair {
    x: ProximitySpace,
    f: PointMap,
    y: ProximitySpace,
    g: PointMap,
    h: PointMap,
}

/// Even indices relabel; odd indices relabel and duplicate every feature.
/// Descriptive modes also move `g(y)` within its descriptive class.
fn constructed_pairs(mode: ConjugacyMode, seed: u64) -> Vec<Pair> {
    let mut rng = rng(seed);
    (0..C4_PAIRS)
        .map(|i| {
            let n = rng.gen_range(1..=6);
            let x = random_probed(&mut rng, n);
            let f = continuous_in(&mut rng, &x, mode.continuity());
            let perm = random_perm(&mut rng, n);
            let mut y = x.relabel(&perm).unwrap();
            let mut g = conjugate(f.table(), &perm);
            if i % 2 == 1 {
                let dup = duplicated(y.probe().unwrap());
                y = y.without_probe().with_probe(dup).unwrap();
                if mode.is_descriptive() {
                    let probe = y.probe().unwrap();
                    for image in g.iter_mut() {
                        let class: Vec<usize> = (0..n)
                            .filter(|&p| probe.class_of(p) == probe.class_of(*image))
                            .collect();
                        *image = class[rng.gen_range(0..class.len())];
                    }
                }
            }
            Pair {
                x,
                f,
                y,
                g: PointMap::self_map(g).unwrap(),
                h: PointMap::self_map(perm).unwrap(),
            }
        })
        .collect()
}

fn systems(p: &Pair) -> (DynamicalSystem<'_>, DynamicalSystem<'_>) {
    (
        DynamicalSystem::new(&p.x, &p.f).unwrap(),
        DynamicalSystem::new(&p.y, &p.g).unwrap(),
    )
}

fn mode_seed(mode: ConjugacyMode) -> u64 {
    40 + ConjugacyMode::ALL.iter().position(|&m| m == mode).unwrap() as u64
}

/// Constructed conjugacies verify and transfer iterates in every mode.
fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    let mut total_fail = 0;
    for mode in ConjugacyMode::ALL {
        let mut cert_fail = 0;
        let mut transfer_fail = 0;
        for p in constructed_pairs(mode, mode_seed(mode)) {
            let (x, y) = systems(&p);
            if !verify_conjugacy(x, y, &p.h, mode, cap(), 0)
                .unwrap()
                .passed()
            {
                cert_fail += 1;
                continue;
            }
            let t = transfer_iterates(x, y, &p.h, mode, C4_DEPTH, cap(), 0).unwrap();
            if t.verdict != Verdict::Pass || !t.exhaustive {
                transfer_fail += 1;
            }
        }
        total_fail += cert_fail + transfer_fail;
        parts.push(format!(
            "{}: {cert_fail} certificate, {transfer_fail} transfer failures",
            mode.as_str()
        ));
    }
    outcome(
        total_fail == 0,
        format!(
            "{C4_PAIRS} pairs per mode, depth {C4_DEPTH}; {}",
            parts.join("; ")
        ),
    )
}

/// Fixed-subset tags and their counts transfer along descriptive conjugacies.
fn criterion_5() -> Outcome {
    let mode = ConjugacyMode::Descriptive;
    let mut fail = 0;
    let mut subsets = 0;
    for p in constructed_pairs(mode, mode_seed(mode)) {
        let (x, y) = systems(&p);
        let r = transfer_fixed_subsets(x, y, &p.h, cap()).unwrap();
        subsets += r.checked_subsets;
        if r.verdict != Verdict::Pass || r.domain_counts != r.codomain_counts {
            fail += 1;
        }
    }
    outcome(
        fail == 0,
        format!("{C4_PAIRS} descriptive pairs, {subsets} subsets tagged, {fail} failures"),
    )
}

/// Unions, intersections and closures of invariant sets stay invariant.
fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    let (mut union, mut inter, mut closure) = (0, 0, 0);
    let (mut cont, mut cont_inter, mut cont_closure) = (0, 0, 0);
    let mut example = None;
    for _ in 0..C6_SYSTEMS {
        let n = rng.gen_range(1..=6);
        let x = random_probed(&mut rng, n);
        let f = PointMap::self_map(random_map(&mut rng, n)).unwrap();
        let family = invariant_subsets(&f, &x, cap()).unwrap();
        let r = invariance_closure_properties(&f, &x, &family).unwrap();
        let fails = |c: &vortex_core::maps::PropertyCheck| c.verdict == Verdict::Fail;
        if fails(&r.pairwise_union) || fails(&r.family_union) {
            union += 1;
        }
        let inter_fail = fails(&r.pairwise_intersection) || fails(&r.family_intersection);
        if inter_fail {
            inter += 1;
            if example.is_none() {
                if let Some((sets, c)) = &r.pairwise_intersection.witness {
                    example = Some(format!(
                        "f={:?}, Φ={:?}, {:?} ∩ {:?} = {:?}",
                        f.table(),
                        (0..n)
                            .map(|p| x.probe().unwrap().class_of(p))
                            .collect::<Vec<_>>(),
                        sets[0],
                        sets[1],
                        c
                    ));
                }
            }
        }
        let closure_fail = fails(&r.closure);
        if closure_fail {
            closure += 1;
        }
        if r.descriptively_continuous {
            cont += 1;
            if inter_fail {
                cont_inter += 1;
            }
            if closure_fail {
                cont_closure += 1;
            }
        }
    }
    let mut detail = format!(
        "{C6_SYSTEMS} systems: union {union}, intersection {inter}, closure {closure} failing; \
         descriptively continuous f: {cont}, of which {cont_inter} fail intersection and {cont_closure} fail closure"
    );
    if let Some(e) = example {
        detail.push_str(&format!("; first counterexample {e}"));
    }
    outcome(union + inter + closure == 0, detail)
}

fn fixture(name: &str) -> Value {
    let text = match name {
        "fig1a" => include_str!("../../cli/tests/fixtures/fig1a.json"),
        _ => include_str!("../../cli/tests/fixtures/fig1b.json"),
    };
    serde_json::from_str(text).unwrap()
}

fn build_tag(doc: &Value) -> Result<vortex_core::PlanarVortex, String> {
    let ws = vortex_cli::parse_workspace(&doc.to_string()).map_err(|d| format!("parse: {d}"))?;
    let def = &ws.complexes[0];
    build_vortex(&def.draft).map_err(|e| e.tag().to_string())
}

fn set_pos(doc: &mut Value, id: u64, x: &str, y: &str) {
    let vertices = doc["complexes"][0]["vertices"].as_array_mut().unwrap();
    let v = vertices.iter_mut().find(|v| v["id"] == id).unwrap();
    v["pos"] = json!([x, y]);
}

/// Figures parse and build, mutations are rejected with the right tag, and
/// rendering is deterministic.
fn criterion_7() -> Outcome {
    let mut problems = Vec::new();
    let mut built = Vec::new();
    for name in ["fig1a", "fig1b"] {
        match build_tag(&fixture(name)) {
            Ok(v) => built.push((name, v)),
            Err(e) => problems.push(format!("{name} rejected: {e}")),
        }
    }

    let mut mutations: Vec<(&str, Value)> = Vec::new();
    let mut doc = fixture("fig1a");
    set_pos(&mut doc, 13, "3.5", "0.5");
    mutations.push(("NOT_NESTED", doc));

    let mut doc = fixture("fig1a");
    let ring = doc["complexes"][0]["cycles"][1]["ring"]
        .as_array_mut()
        .unwrap();
    ring.swap(2, 3);
    mutations.push(("NOT_SIMPLE", doc));

    let mut doc = fixture("fig1a");
    doc["complexes"][0]["bridges"] = json!([]);
    mutations.push(("DISCONNECTED", doc));

    let mut doc = fixture("fig1a");
    doc["complexes"][0]["cycles"][1]["ring"] = json!([10, 11, 12]);
    set_pos(&mut doc, 11, "0.5", "0.25");
    set_pos(&mut doc, 12, "1", "0.25");
    mutations.push(("DEGENERATE", doc));

    for (want, doc) in &mutations {
        match build_tag(doc) {
            Ok(_) => problems.push(format!("{want} mutation accepted")),
            Err(tag) if tag != *want => problems.push(format!("{want} mutation rejected as {tag}")),
            Err(_) => {}
        }
    }

    let ws = vortex_cli::parse_workspace(&fixture("fig1a").to_string()).unwrap();
    for (name, v) in &built {
        if render_svg(v, ws.quantum) != render_svg(v, ws.quantum) {
            problems.push(format!("{name} renders differently across runs"));
        }
    }
    let pass = problems.is_empty();
    outcome(
        pass,
        if pass {
            format!(
                "fig1a and fig1b build; {} mutations rejected with the expected tags; SVG byte-identical",
                mutations.len()
            )
        } else {
            problems.join("; ")
        },
    )
}

/// Continuous retractions onto one vertex fix exactly that vertex; a rotation
/// fixes none.
fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    let (mut found, mut skipped, mut wrong) = (0, 0, 0);
    let mut attempts = 0;
    while found < C8_MAPS && attempts < C8_ATTEMPTS {
        attempts += 1;
        let v = random_vortex(&mut rng, 2, (3, 8));
        let space = v.to_space(None).unwrap();
        let sink = rng.gen_range(0..v.len());
        let f = PointMap::self_map(step_to_sink(&v, sink)).unwrap();
        if !check_proximal_continuity(&f, &space, &space, cap())
            .unwrap()
            .passed()
        {
            skipped += 1;
            continue;
        }
        found += 1;
        let r = vortex_fixed_point_check(&v, &space, &f, cap(), 0).unwrap();
        if r.outcome != FixedPointOutcome::Consistent || r.fixed_vertices != vec![v.vertex_at(sink)]
        {
            wrong += 1;
        }
    }
    let v = radial_polygons(5);
    let space = v.to_space(None).unwrap();
    let rot = PointMap::self_map(rotation_table(&v, 5)).unwrap();
    let r = vortex_fixed_point_check(&v, &space, &rot, cap(), 0).unwrap();
    let rotation_ok = r.outcome == FixedPointOutcome::CombinatorialCounterexample;
    outcome(
        found == C8_MAPS && wrong == 0 && rotation_ok,
        format!(
            "{found} continuous step-to-sink maps ({skipped} discontinuous skipped), {wrong} not CONSISTENT at the sink; rotation: {}",
            r.outcome.as_str()
        ),
    )
}

/// Independent model of the 4-point space used for the search oracle.
struct Model {
    n: usize,
    adj: Vec<Vec<bool>>,
    labels: Vec<usize>,
}

impl Model {
    fn image(&self, f: &[usize], a: u32) -> u32 {
        (0..self.n)
            .filter(|&p| a >> p & 1 == 1)
            .fold(0, |acc, p| acc | 1 << f[p])
    }

    fn near(&self, a: u32, b: u32) -> bool {
        (0..self.n)
            .any(|p| a >> p & 1 == 1 && (0..self.n).any(|q| b >> q & 1 == 1 && self.adj[p][q]))
    }

    fn desc(&self, a: u32) -> u32 {
        (0..self.n)
            .filter(|&p| a >> p & 1 == 1)
            .fold(0, |acc, p| acc | 1 << self.labels[p])
    }

    fn related(&self, mode: ContinuityMode, a: u32, b: u32) -> bool {
        match mode {
            ContinuityMode::Proximal => self.near(a, b),
            ContinuityMode::Descriptive => self.desc(a) & self.desc(b) != 0,
        }
    }

    fn continuous(&self, f: &[usize], mode: ContinuityMode) -> bool {
        let all = 1u32 << self.n;
        (0..all).all(|a| {
            (0..all).all(|b| {
                !self.related(mode, a, b) || self.related(mode, self.image(f, a), self.image(f, b))
            })
        })
    }

    fn holds(&self, mode: ConjugacyMode, f: &[usize], g: &[usize], h: &[usize]) -> bool {
        (0..1u32 << self.n)
            .filter(|&a| !mode.is_weak() || a != 0)
            .all(|a| {
                let left = self.image(g, self.image(h, a));
                let right = self.image(h, self.image(f, a));
                match mode {
                    ConjugacyMode::Exact => left == right,
                    ConjugacyMode::Descriptive => self.desc(left) == self.desc(right),
                    ConjugacyMode::Weak => self.near(left, right),
                    ConjugacyMode::WeakDescriptive => self.desc(left) & self.desc(right) != 0,
                }
            })
    }

    fn expected(
        &self,
        mode: ConjugacyMode,
        f: &[usize],
        g: &[usize],
        perms: &[Vec<usize>],
    ) -> String {
        let cm = mode.continuity();
        if !self.continuous(f, cm) {
            return "INAPPLICABLE f".into();
        }
        if !self.continuous(g, cm) {
            return "INAPPLICABLE g".into();
        }
        perms
            .iter()
            .find(|h| {
                let mut inv = vec![0; self.n];
                for (p, &q) in h.iter().enumerate() {
                    inv[q] = p;
                }
                self.continuous(h, cm) && self.continuous(&inv, cm) && self.holds(mode, f, g, h)
            })
            .map_or("NONE".into(), |h| format!("{h:?}"))
    }
}

fn lex_perms(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for p in 0..n {
            if !prefix.contains(&p) {
                prefix.push(p);
                extend(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n, &mut out);
    out
}

/// The conjugacy search agrees with brute force on a sample of all map pairs
/// of a probed 4-cycle.
fn criterion_9() -> Outcome {
    let n = 4;
    let edges = [(0, 1), (1, 2), (2, 3), (3, 0)];
    let labels = [0usize, 0, 1, 1];
    let x = ProximitySpace::new(n, edges)
        .unwrap()
        .with_probe(ProbeMap::from_labels(&labels.map(|l| l as i64)))
        .unwrap();
    let mut adj = vec![vec![false; n]; n];
    for (p, row) in adj.iter_mut().enumerate() {
        row[p] = true;
    }
    for (a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let model = Model {
        n,
        adj,
        labels: labels.to_vec(),
    };
    let perms = lex_perms(n);
    let decode = |i: usize| {
        (0..n)
            .map(|k| i / 4usize.pow(k as u32) % 4)
            .collect::<Vec<_>>()
    };

    let mut rng = rng(9);
    let mut sample = Vec::new();
    for fi in 0..256 {
        for gi in 0..256 {
            if rng.gen_bool(C9_RATE) {
                sample.push((decode(fi), decode(gi)));
            }
        }
    }
    let mut mismatches = 0;
    let mut first = None;
    let mut found = 0;
    for (ft, gt) in &sample {
        let f = PointMap::self_map(ft.clone()).unwrap();
        let g = PointMap::self_map(gt.clone()).unwrap();
        for mode in ConjugacyMode::ALL {
            let r = search_conjugacy(
                DynamicalSystem::new(&x, &f).unwrap(),
                DynamicalSystem::new(&x, &g).unwrap(),
                mode,
                cap(),
                0,
            )
            .unwrap();
            let got = match (&r.certificate, r.reason.as_deref()) {
                (Some(c), _) => format!("{:?}", c.h),
                (None, Some("f is not continuous")) => "INAPPLICABLE f".into(),
                (None, Some("g is not continuous")) => "INAPPLICABLE g".into(),
                (None, Some("no bijection verifies")) => "NONE".into(),
                (None, other) => format!("unexpected {other:?}"),
            };
            if got.starts_with('[') {
                found += 1;
            }
            let want = model.expected(mode, ft, gt, &perms);
            if got != want {
                mismatches += 1;
                first.get_or_insert(format!(
                    "{} f={ft:?} g={gt:?}: search {got}, oracle {want}",
                    mode.as_str()
                ));
            }
        }
    }
    let mut detail = format!(
        "{} sampled pairs x 4 modes, {found} conjugacies found, {mismatches} mismatches",
        sample.len()
    );
    if let Some(e) = first {
        detail.push_str(&format!("; first: {e}"));
    }
    outcome(mismatches == 0 && !sample.is_empty(), detail)
}
