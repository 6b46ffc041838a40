use std::env;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use finq::born::{born_probability, parse_vector, scalar_product, ComponentForm};
use finq::dynamics::{phase_portrait, Rule};
use finq::forms::{basis_forms, decompose, BasisForm};
use finq::pathsum::{
    conditional_table, exact_maxima, interference, parse_sources, smallest_destructive_order,
    approx_conditional, approx_grid_argmax, DestructiveFamily, InterferenceProfile,
};
use finq::poly::default_names;
use finq::relations::{
    base_relation, canonical_decomposition, classify_elementary, elementary_relation,
    life_decomposition, CanonicalDecomposition, Relation,
};
use finq::{fixtures, Cyclotomic, Error, Graph, PermGroup};
use serde_json::{json, Value};

use crate::output::{
    cyclotomic_float, cyclotomic_list, exact_cyclotomic, exact_rational, exact_value, matrix_rows,
    parse_cyclotomic, rational_float, state_string,
};
use crate::{
    BornArgs, Cli, CliError, CliResult, Command, ExportKind, FixturesCommand, Outcome,
    PathsumArgs, PortraitArgs, RelationsCommand, SpacetimeArgs, Table, FIXTURE_DIR_VAR,
};

/// Extra fixture names beyond groups, graphs and character tables.
const MATRIX_NAMES: &[&str] = &["tribimaximal", "SL23printed", "A2printed", "C3printed", "A5forms"];

pub(crate) fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Orbitals(a) => orbitals(&a.group),
        Command::Forms(a) => forms(&a.group, cli.seed),
        Command::Born(a) => born(a, cli.seed),
        Command::Relations(r) => relations(r),
        Command::Portrait(a) => portrait(a),
        Command::Pathsum(a) => pathsum(a),
        Command::Spacetime(a) => spacetime(a),
        Command::Fixtures(f) => fixtures_cmd(f),
    }
}

/// A `.json` path is read directly; otherwise the fixture directory is tried
/// before the built-in tables.
fn override_file(name: &str) -> CliResult<Option<String>> {
    if name.ends_with(".json") {
        return Ok(Some(fs::read_to_string(name)?));
    }
    if let Some(dir) = env::var_os(FIXTURE_DIR_VAR) {
        let path = PathBuf::from(dir).join(format!("{name}.json"));
        if path.is_file() {
            return Ok(Some(fs::read_to_string(path)?));
        }
    }
    Ok(None)
}

pub fn load_group(name: &str) -> CliResult<PermGroup> {
    match override_file(name)? {
        Some(text) => Ok(PermGroup::from_json(&text)?),
        None => Ok(fixtures::group(name)?),
    }
}

pub fn load_graph(name: &str) -> CliResult<Graph> {
    match override_file(name)? {
        Some(text) => Ok(Graph::from_json(&text)?),
        None => Ok(fixtures::graph(name)?),
    }
}

fn one_based_pairs(form: &BasisForm) -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    for (i, row) in form.matrix.iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            if a == 1 {
                out.push([i + 1, j + 1]);
            }
        }
    }
    out
}

fn group_summary(g: &PermGroup) -> CliResult<Value> {
    Ok(json!({
        "name": g.name(),
        "degree": g.degree(),
        "order": g.order()?,
        "generators": g.to_file().generators,
    }))
}

fn orbitals(name: &str) -> CliResult<Outcome> {
    let g = load_group(name)?;
    let forms = basis_forms(&g);
    let list: Vec<Value> = forms
        .iter()
        .map(|f| {
            json!({
                "index": f.index + 1,
                "name": f.name,
                "valency": f.valency(),
                "matrix": matrix_rows(&f.matrix),
                "pairs": one_based_pairs(f),
            })
        })
        .collect();
    let rows = forms
        .iter()
        .flat_map(|f| {
            one_based_pairs(f)
                .into_iter()
                .map(move |[i, j]| vec![(f.index + 1).to_string(), i.to_string(), j.to_string()])
        })
        .collect();
    let result = json!({
        "group": group_summary(&g)?,
        "rank": forms.len(),
        "orbitals": list,
    });
    Ok(Outcome::new(json!({ "group": name }), result).with_table(Table {
        header: vec!["orbital", "i", "j"],
        rows,
    }))
}

fn forms(name: &str, seed: u64) -> CliResult<Outcome> {
    let g = load_group(name)?;
    let d = decompose(&g, seed)?;
    let names = default_names(d.basis.len());
    let orbital_of: Vec<usize> = {
        let mut map = vec![0; d.orbitals.len()];
        for (k, grp) in d.coarsening.groups.iter().enumerate() {
            for &i in grp {
                map[i] = k;
            }
        }
        map
    };
    let factors: Vec<Value> = d
        .factorization
        .factors
        .iter()
        .map(|f| {
            json!({
                "polynomial": f.poly.render(&names),
                "terms": f.poly.to_json(),
                "exponent": f.exponent,
                "multiplicity": f.multiplicity(),
                "linear_coeffs": f.linear_coeffs().map(|c| cyclotomic_list(&c)),
            })
        })
        .collect();
    let dims = d.dimensions();
    let forms: Vec<Value> = d
        .forms
        .iter()
        .map(|f| {
            let scaled = f.scaled();
            let over_orbitals: Vec<Cyclotomic> =
                orbital_of.iter().map(|&k| scaled[k].clone()).collect();
            json!({
                "component": f.component + 1,
                "dimension": dims[f.component],
                "normalization": exact_rational(&f.normalization),
                "coeffs": cyclotomic_list(&f.coeffs),
                "scaled": cyclotomic_list(&scaled),
                "orbital_coeffs": cyclotomic_list(&over_orbitals),
            })
        })
        .collect();
    let result = json!({
        "group": group_summary(&g)?,
        "rank": d.orbitals.len(),
        "orbitals": d.orbitals.iter().map(|f| json!({
            "name": f.name,
            "matrix": matrix_rows(&f.matrix),
        })).collect::<Vec<_>>(),
        "structure": {
            "alpha": d.tables.alpha,
            "gamma": d.tables.gamma,
            "commutative": d.tables.is_commutative(),
        },
        "coarsening": {
            "groups": d.coarsening.groups.iter()
                .map(|grp| grp.iter().map(|i| i + 1).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "basis": d.basis.iter().map(|f| f.name.clone()).collect::<Vec<_>>(),
        },
        "det": {
            "polynomial": d.det.render(&names),
            "terms": d.det.to_json(),
        },
        "factorization": {
            "conductor": d.factorization.conductor,
            "seed": d.factorization.seed,
            "attempts": d.factorization.attempts,
            "factors": factors,
        },
        "dimensions": dims,
        "forms": forms,
    });
    Ok(Outcome::new(json!({ "group": name }), result))
}

fn born(a: &BornArgs, seed: u64) -> CliResult<Outcome> {
    let g = load_group(&a.group)?;
    let m = parse_vector(&a.m)?;
    let n = parse_vector(&a.n)?;
    let form = match (&a.coeffs, a.component) {
        (Some(text), _) => {
            let coeffs = text
                .split(';')
                .map(|t| parse_cyclotomic(t.trim()))
                .collect::<finq::Result<Vec<_>>>()?;
            ComponentForm::new("custom", basis_forms(&g), coeffs)?
        }
        (None, Some(0)) => return Err(CliError::Usage("--component is 1-based".into())),
        (None, Some(k)) => ComponentForm::from_decomposition(&decompose(&g, seed)?, k - 1)?,
        (None, None) => return Err(CliError::Usage("--component or --coeffs is required".into())),
    };
    let sp = scalar_product(&form, &m, &n)?;
    let p = born_probability(&form, &m, &n, a.combine_conjugates)?;
    let inputs = json!({
        "group": a.group,
        "component": a.component,
        "coeffs": a.coeffs,
        "m": m,
        "n": n,
        "combine_conjugates": a.combine_conjugates,
    });
    let result = json!({
        "form": {
            "label": form.label,
            "coeffs": cyclotomic_list(&form.coeffs),
            "rational": form.is_rational(),
        },
        "scalar_product": exact_cyclotomic(&sp),
        "probability": exact_rational(&p),
        "probability_float": rational_float(&p),
    });
    Ok(Outcome::new(inputs, result))
}

fn relation_json(r: &Relation) -> CliResult<Value> {
    Ok(json!({
        "file": serde_json::to_value(r.to_file())?,
        "size": r.len(),
    }))
}

fn decomposition_json(d: &CanonicalDecomposition) -> CliResult<Value> {
    let consequences = d
        .consequences
        .iter()
        .map(|c| {
            Ok(json!({
                "face": c.face,
                "bits": c.relation.bit_string(),
                "size": c.relation.len(),
            }))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let children = d
        .children
        .iter()
        .map(decomposition_json)
        .collect::<CliResult<Vec<_>>>()?;
    Ok(json!({
        "relation": relation_json(&d.relation)?,
        "anf": d.relation.to_anf().ok().map(|p| p.render()),
        "consequences": consequences,
        "factor": relation_json(&d.factor)?,
        "reducible": d.reducible,
        "prime": d.prime,
        "children": children,
        "choice": d.choice,
    }))
}

fn relations(cmd: &RelationsCommand) -> CliResult<Outcome> {
    match cmd {
        RelationsCommand::Decompose { rule, file, depth } => {
            let (r, inputs) = match (rule, file) {
                (Some(rule), _) => (elementary_relation(*rule), json!({ "rule": rule, "depth": depth })),
                (None, Some(path)) => (
                    Relation::from_json(&fs::read_to_string(path)?)?,
                    json!({ "file": path.display().to_string(), "depth": depth }),
                ),
                (None, None) => return Err(CliError::Usage("--rule or --file is required".into())),
            };
            let d = canonical_decomposition(&r, *depth)?;
            Ok(Outcome::new(inputs, decomposition_json(&d)?))
        }
        RelationsCommand::Classify => {
            let c = classify_elementary()?;
            let result = json!({
                "reducible": c.reducible.len(),
                "irreducible": c.irreducible.len(),
                "prime": c.prime,
            });
            Ok(Outcome::new(json!({}), result))
        }
        RelationsCommand::Life => {
            let life = life_decomposition()?;
            let mut system = vec![life.r2.relation.clone()];
            system.extend(life.r1.iter().map(|c| c.relation.clone()));
            let rebuilt = base_relation(&system)?;
            let r1: Vec<Value> = life
                .r1
                .iter()
                .map(|c| json!({ "face": c.face, "size": c.relation.len() }))
                .collect();
            let result = json!({
                "size": life.relation.len(),
                "anf": life.relation.to_anf()?.render(),
                "r2": {
                    "face": life.r2.face,
                    "size": life.r2.relation.len(),
                    "anf": life.r2.relation.to_anf()?.render(),
                },
                "r1": r1,
                "base_equals_relation": rebuilt.equivalent(&life.relation),
            });
            Ok(Outcome::new(json!({}), result))
        }
    }
}

fn default_group_for(graph: &str) -> Option<&'static str> {
    match graph {
        "cube" => Some("cubeAut"),
        "icosahedron" => Some("A5ico"),
        "torus8" => Some("torus8glider"),
        "fullereneC60" => Some("fullereneC60"),
        _ => None,
    }
}

fn portrait(a: &PortraitArgs) -> CliResult<Outcome> {
    let graph = load_graph(&a.graph)?;
    let rule = Rule::parse(&a.rule)?;
    let group_name = match &a.group {
        Some(g) => g.clone(),
        None => default_group_for(&a.graph)
            .ok_or_else(|| CliError::Usage(format!("--group is required for graph `{}`", a.graph)))?
            .to_string(),
    };
    let group = load_group(&group_name)?;
    let pp = phase_portrait(&graph, &rule, &group)?;
    let part = &pp.partition;
    let cycle_of = |o: usize| pp.cycles.iter().position(|c| c.contains(&o));
    let orbits: Vec<Value> = (0..part.len())
        .map(|o| {
            json!({
                "id": o,
                "representative": state_string(&part.space.decode(part.representatives[o])),
                "size": part.sizes[o],
                "next": pp.transition[o],
                "depth": pp.depth[o],
                "basin": pp.basin_of[o],
                "cycle": cycle_of(o),
            })
        })
        .collect();
    let cycles: Vec<Value> = pp
        .cycles
        .iter()
        .enumerate()
        .map(|(k, c)| {
            json!({
                "orbits": c,
                "length": c.len(),
                "orbit_size": part.sizes[c[0]],
                "basin_size": pp.basin_size(k),
                "weight": exact_rational(&pp.weights[k]),
                "weight_float": rational_float(&pp.weights[k]),
            })
        })
        .collect();
    let census: serde_json::Map<String, Value> = part
        .census()
        .into_iter()
        .map(|(size, count)| (size.to_string(), json!(count)))
        .collect();
    let rows = (0..part.len())
        .map(|o| {
            vec![
                o.to_string(),
                state_string(&part.space.decode(part.representatives[o])),
                part.sizes[o].to_string(),
                pp.transition[o].to_string(),
                pp.depth[o].to_string(),
                pp.basin_of[o].to_string(),
            ]
        })
        .collect();
    let rule_bs = graph.regular_degree().map(|k| rule.to_bs(k));
    let result = json!({
        "states": part.space.size(),
        "orbit_count": part.len(),
        "census": census,
        "rule": rule_bs,
        "orbits": orbits,
        "cycles": cycles,
        "total_weight": exact_rational(&pp.total_weight()),
    });
    let inputs = json!({ "graph": a.graph, "rule": a.rule, "group": group_name });
    Ok(Outcome::new(inputs, result).with_table(Table {
        header: vec!["orbit", "representative", "size", "next", "depth", "basin"],
        rows,
    }))
}

fn pathsum(a: &PathsumArgs) -> CliResult<Outcome> {
    if a.find_destructive {
        let family = DestructiveFamily {
            max_t: a.t,
            max_distance: a.max_distance,
        };
        let witness = smallest_destructive_order(a.m, family)?;
        let inputs = json!({ "max_M": a.m, "max_T": a.t, "max_distance": a.max_distance });
        let result = json!({
            "witness": witness.map(|w| json!({
                "M": w.m, "T": w.t, "distance": w.distance, "phase": w.phase, "x": w.x,
            })),
        });
        return Ok(Outcome::new(inputs, result));
    }
    let sources = parse_sources(&a.sources)?;
    let profile = interference(a.m, a.t, &sources)?;
    let probs = profile.probabilities();
    let floats = profile.normalized();
    if let Some(path) = &a.svg {
        fs::write(path, svg_bars(&profile, &floats))?;
    }
    let points: Vec<Value> = profile
        .positions
        .iter()
        .enumerate()
        .map(|(i, x)| {
            json!({
                "x": x,
                "amplitude": exact_cyclotomic(&profile.amplitudes[i]),
                "intensity": exact_value(&profile.intensities[i]),
                "probability": exact_value(&probs[i]),
                "float": floats[i],
            })
        })
        .collect();
    let rows = profile
        .positions
        .iter()
        .enumerate()
        .map(|(i, x)| vec![x.to_string(), exact_value(&probs[i]), floats[i].to_string()])
        .collect();
    let total = profile.total_intensity();
    let result = json!({
        "points": points,
        "total_intensity": exact_value(&total),
        "total_intensity_float": cyclotomic_float(&total),
        "zero_positions": profile.zero_positions(),
    });
    let inputs = json!({ "M": a.m, "T": a.t, "sources": a.sources });
    Ok(Outcome::new(inputs, result).with_table(Table {
        header: vec!["x", "exact", "float"],
        rows,
    }))
}

fn svg_bars(profile: &InterferenceProfile, values: &[f64]) -> String {
    let (w, h, pad) = (640.0, 240.0, 20.0);
    let n = values.len().max(1) as f64;
    let top = values.iter().copied().fold(0.0f64, f64::max).max(f64::MIN_POSITIVE);
    let bar = (w - 2.0 * pad) / n;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        out,
        r#"<title>M={} T={} intensity profile</title>"#,
        profile.m, profile.t
    );
    for (i, (&v, x)) in values.iter().zip(&profile.positions).enumerate() {
        let bh = (h - 2.0 * pad) * v / top;
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="steelblue"><title>x={x} p={v:.6}</title></rect>"#,
            pad + i as f64 * bar,
            h - pad - bh,
            bar * 0.9,
            bh
        );
    }
    let _ = writeln!(
        out,
        r#"<line x1="{pad}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#,
        h - pad,
        w - pad
    );
    out.push_str("</svg>\n");
    out
}

fn spacetime(a: &SpacetimeArgs) -> CliResult<Outcome> {
    let mut result = serde_json::Map::new();
    let mut table = None;
    if a.exact {
        let points = conditional_table(a.x, a.t)?;
        let (best, at) = exact_maxima(a.x, a.t)?;
        let rows: Vec<Vec<String>> = points
            .iter()
            .map(|((x, t), p)| {
                vec![x.to_string(), t.to_string(), exact_rational(p), rational_float(p).to_string()]
            })
            .collect();
        result.insert(
            "exact".into(),
            json!({
                "points": points.iter().map(|((x, t), p)| json!({
                    "x": x, "t": t, "probability": exact_rational(p), "float": rational_float(p),
                })).collect::<Vec<_>>(),
                "maximum": {
                    "value": exact_rational(&best),
                    "float": rational_float(&best),
                    "points": at.iter().map(|(x, t)| json!([x, t])).collect::<Vec<_>>(),
                },
            }),
        );
        table = Some(Table {
            header: vec!["x", "t", "exact", "float"],
            rows,
        });
    }
    if a.approx {
        let mut slices = Vec::new();
        let mut rows = Vec::new();
        for t in 1..a.t {
            let tf = t as f64;
            let argmax = approx_grid_argmax(tf, a.x as f64, a.t as f64, a.v, a.step)?;
            let value = match argmax.first() {
                Some(&x) => approx_conditional(x, tf, a.x as f64, a.t as f64, a.v)?,
                None => f64::NAN,
            };
            rows.push(vec![
                t.to_string(),
                argmax.iter().map(f64::to_string).collect::<Vec<_>>().join(";"),
                value.to_string(),
            ]);
            slices.push(json!({ "t": t, "argmax": argmax, "value": value }));
        }
        let unique = slices
            .iter()
            .all(|s| s["argmax"].as_array().is_some_and(|v| v.len() == 1));
        result.insert(
            "approx".into(),
            json!({ "v": a.v, "step": a.step, "slices": slices, "unique": unique }),
        );
        table = match table {
            Some(_) => None,
            None => Some(Table {
                header: vec!["t", "argmax", "value"],
                rows,
            }),
        };
    }
    let inputs = json!({ "T": a.t, "X": a.x, "v": a.v, "step": a.step, "exact": a.exact, "approx": a.approx });
    let mut out = Outcome::new(inputs, Value::Object(result));
    out.table = table;
    Ok(out)
}

fn fixtures_cmd(cmd: &FixturesCommand) -> CliResult<Outcome> {
    match cmd {
        FixturesCommand::List => {
            let result = json!({
                "groups": fixtures::GROUP_NAMES,
                "graphs": fixtures::GRAPH_NAMES,
                "character_tables": fixtures::TABLE_NAMES,
                "matrices": MATRIX_NAMES,
            });
            Ok(Outcome::new(json!({}), result))
        }
        FixturesCommand::Show { name } => show(name),
        FixturesCommand::Export { name, kind } => {
            let value = match kind {
                ExportKind::Group => serde_json::to_value(load_group(name)?.to_file())?,
                ExportKind::Graph => serde_json::to_value(load_graph(name)?.to_file())?,
            };
            let mut out = Outcome::new(json!({ "name": name }), value);
            out.raw = true;
            Ok(out)
        }
    }
}

fn matrix_strings(m: &[Vec<Cyclotomic>]) -> Vec<Vec<String>> {
    m.iter().map(|row| cyclotomic_list(row)).collect()
}

fn printed_factors(fs: &[(Vec<Cyclotomic>, usize)]) -> Vec<Value> {
    fs.iter()
        .map(|(c, e)| json!({ "coeffs": cyclotomic_list(c), "exponent": e }))
        .collect()
}

fn show(name: &str) -> CliResult<Outcome> {
    let mut result = serde_json::Map::new();
    if fixtures::GROUP_NAMES.contains(&name) {
        let g = fixtures::group(name)?;
        result.insert("group".into(), group_summary(&g)?);
    }
    if fixtures::GRAPH_NAMES.contains(&name) {
        let g = fixtures::graph(name)?;
        result.insert(
            "graph".into(),
            json!({
                "n": g.n(),
                "edge_count": g.edges().len(),
                "regular_degree": g.regular_degree(),
                "file": serde_json::to_value(g.to_file())?,
            }),
        );
    }
    if fixtures::TABLE_NAMES.contains(&name) {
        let t = fixtures::character_table(name)?;
        result.insert(
            "character_table".into(),
            json!({
                "group": t.group,
                "classes": t.classes,
                "class_sizes": t.class_sizes,
                "irreps": t.irreps,
                "rows": matrix_strings(&t.rows),
                "dimensions": cyclotomic_list(&t.dimensions()),
            }),
        );
    }
    let printed = match name {
        "tribimaximal" => Some(json!({
            "matrix": matrix_strings(&fixtures::tribimaximal_matrix()),
            "squares": fixtures::tribimaximal_squares()
                .iter()
                .map(|row| row.iter().map(exact_rational).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })),
        "SL23printed" => Some(json!({
            "orbitals": fixtures::sl23_printed_forms().iter().map(|m| matrix_rows(m)).collect::<Vec<_>>(),
            "factors": printed_factors(&fixtures::sl23_printed_factors()),
            "forms": matrix_strings(&fixtures::sl23_printed_invariant_forms()),
        })),
        "A2printed" => Some(json!({
            "orbitals": fixtures::a2_printed_forms().iter().map(|m| matrix_rows(m)).collect::<Vec<_>>(),
            "factors": printed_factors(&fixtures::a2_printed_factors()),
            "forms": matrix_strings(&fixtures::a2_printed_invariant_forms()),
        })),
        "C3printed" => Some(json!({
            "orbitals": fixtures::c3_printed_forms().iter().map(|m| matrix_rows(m)).collect::<Vec<_>>(),
        })),
        "A5forms" => Some(json!({
            "forms": fixtures::a5_printed_forms()
                .iter()
                .map(|(label, c)| json!({ "label": label, "coeffs": cyclotomic_list(c) }))
                .collect::<Vec<_>>(),
            "combined": cyclotomic_list(&fixtures::a5_combined_form()),
        })),
        _ => None,
    };
    if let Some(p) = printed {
        result.insert("matrices".into(), p);
    }
    if result.is_empty() {
        return Err(Error::UnknownFixture(name.to_string()).into());
    }
    Ok(Outcome::new(json!({ "name": name }), Value::Object(result)))
}
