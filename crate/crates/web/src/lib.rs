//! Browser demo over `cantor-core`. Every export takes and returns strings;
//! failures come back as a line `error: <code>: <detail>`.

use cantor_core::artifact::{print_mealy, print_prefix_map};
use cantor_core::circle::{self, Orientation};
use cantor_core::cli::as_element;
use cantor_core::germ::germ_at;
use cantor_core::{parse_artifact, AnchoredHomeo, Artifact, Error, EventuallyPeriodicPoint, Params, SyncVerdict, Word};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn error_line(e: Error) -> String {
    format!("error: {}: {}", e.code(), e)
}

fn flatten(r: Result<String, Error>) -> String {
    r.unwrap_or_else(error_line)
}

/// Largest depth whose boundary points stay under `budget`.
fn plot_depth(p: &Params, budget: usize) -> usize {
    let mut depth = 0;
    while p.r as usize * (p.n as usize).pow(depth as u32 + 1) <= budget && depth < 12 {
        depth += 1;
    }
    depth
}

fn circle_graph_inner(text: &str, budget: usize) -> Result<String, Error> {
    let h = as_element(&parse_artifact(text)?)?;
    let p = h.params();
    let depth = plot_depth(&p, budget.max(1));
    let report = circle::simeq_compatible(&h)?;
    let orientation = match circle::orientation_of(&h) {
        Ok(Orientation::Preserving) => "preserving",
        Ok(Orientation::Reversing) => "reversing",
        Err(_) => "none",
    };
    let mut points = Vec::new();
    for w in p.words_at_depth(depth) {
        let x = EventuallyPeriodicPoint::new(w, vec![0])?;
        let y = h.evaluate_point(&x);
        points.push(json!([
            circle::point_value(&x, &p).to_string(),
            circle::point_value(&y, &p).to_string()
        ]));
    }
    Ok(json!({
        "n": p.n,
        "r": p.r,
        "depth": depth,
        "compatible": report.compatible(),
        "failures": report.failures.len(),
        "orientation": orientation,
        "points": points,
    })
    .to_string())
}

/// JSON with exact values `[x, h(x)]` on all boundary points of one depth.
#[wasm_bindgen]
pub fn circle_graph(text: &str, budget: u32) -> String {
    flatten(circle_graph_inner(text, budget as usize))
}

fn realize_inner(n: u32, r: u32, point: &str, i: i64, j: i64, avoid: &str) -> Result<String, Error> {
    let p = Params::new(n, r)?;
    let x = circle::parse_point(point, &p)?;
    let avoid = match avoid.trim() {
        "" => None,
        w => Some(Word::parse(w, &p)?),
    };
    let f = cantor_core::prefix_map::realize_germ(p, &x, i, j, avoid.as_ref())?;
    let germ = germ_at(&AnchoredHomeo::from_prefix_map(&f), &x)?;
    Ok(format!("# {germ}\n{}", print_prefix_map(&f)))
}

/// A prefix map fixing `point` with offsets `i` and `j`, headed by its germ.
#[wasm_bindgen]
pub fn realize(n: u32, r: u32, point: &str, i: i32, j: i32, avoid: &str) -> String {
    flatten(realize_inner(n, r, point, i.into(), j.into(), avoid))
}

fn sync_report_inner(text: &str) -> Result<String, Error> {
    let machine = match parse_artifact(text)? {
        Artifact::Mealy(t) => t,
        other => as_element(&other)?.core().clone(),
    };
    Ok(match machine.synchronization_certificate() {
        SyncVerdict::Synchronizing(cert) => {
            let core = machine.core_extract()?;
            format!(
                "synchronizing level={} core_states={}\n{}",
                cert.level,
                core.num_states(),
                print_mealy(&core.minimize().0.iso_canonical())
            )
        }
        SyncVerdict::NotSynchronizing(cycle) => {
            let sets: Vec<String> = cycle
                .iter()
                .map(|s| format!("{{{}}}", s.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            format!("not-synchronizing witness={}\ncycle {}\n", sets[0], sets.join(" -> "))
        }
    })
}

/// The synchronization verdict and, when there is one, the minimal core.
#[wasm_bindgen]
pub fn sync_report(text: &str) -> String {
    flatten(sync_report_inner(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROTATION: &str = "@prefixmap n=2 r=1\nd0:0 -> d0:10\nd0:10 -> d0:11\nd0:11 -> d0:0\n";

    #[test]
    fn rotation_graph() {
        let v: serde_json::Value = serde_json::from_str(&circle_graph(ROTATION, 8)).unwrap();
        assert_eq!(v["compatible"], true);
        assert_eq!(v["orientation"], "preserving");
        assert_eq!(v["depth"], 3);
        let points = v["points"].as_array().unwrap();
        assert_eq!(points.len(), 8);
        assert_eq!(points[0], json!(["0", "1/2"]));
        assert_eq!(points[4], json!(["1/2", "3/4"]));
    }

    #[test]
    fn swap_is_torn() {
        let swap = "@prefixmap n=2 r=1\nd0:00 -> d0:00\nd0:01 -> d0:10\nd0:10 -> d0:01\nd0:11 -> d0:11\n";
        let v: serde_json::Value = serde_json::from_str(&circle_graph(swap, 8)).unwrap();
        assert_eq!(v["compatible"], false);
        assert_eq!(v["orientation"], "none");
    }

    #[test]
    fn realized_germ() {
        let out = realize(2, 1, "1/2", -1, 2, "");
        assert!(
            out.starts_with("# NADIC core=trivial d=-1 e=2\n@prefixmap n=2 r=1\n"),
            "{out}"
        );
        assert_eq!(
            realize(2, 1, "1/3", 1, 1, ""),
            "error: NotNAdic: d0:(01) is not an n-adic rational in [0, r)"
        );
    }

    #[test]
    fn reports() {
        assert_eq!(
            sync_report("@mealy n=2 states=1\n0 0 1 0\n0 1 0 0\n"),
            "synchronizing level=0 core_states=1\n@mealy n=2 states=1\n0 0 1 0\n0 1 0 0\n"
        );
        let split = "@mealy n=2 states=2\n0 0 1 0\n0 1 0 0\n1 0 0 1\n1 1 1 1\n";
        assert_eq!(sync_report(split), "not-synchronizing witness={0,1}\ncycle {0,1}\n");
        assert!(sync_report("@nope").starts_with("error: UnknownHeader: "));
    }
}
