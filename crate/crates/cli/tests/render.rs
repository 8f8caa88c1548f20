mod common;

use common::{corpus, gem};
use gem_cli::render::{render, SchemaError};
use serde_json::Value;

fn diagram(file: &str, color: &str, pairs: &str) -> Value {
    let o = gem(&[
        "trisect",
        &corpus(file),
        "--color",
        color,
        "--pairs",
        pairs,
        "--json",
    ]);
    serde_json::from_str(&o.stdout).unwrap()
}

fn count(svg: &str, needle: &str) -> usize {
    svg.matches(needle).count()
}

#[test]
fn melon_picture() {
    let svg = render(&diagram("melon.gem", "0", "12,34")).unwrap();
    // one square per node of the bubble, joined by one tube
    assert_eq!(count(&svg, r#"class="square""#), 2);
    assert_eq!(count(&svg, r#"class="disc""#), 2);
    assert_eq!(count(&svg, r#"data-tube="0""#), 2);
    assert_eq!(count(&svg, r#"class="curve alpha""#), 1);
    assert_eq!(count(&svg, r#"class="curve beta""#), 1);
    assert_eq!(count(&svg, r#"class="curve gamma""#), 1);
    assert!(!svg.contains("stroke-dasharray=\"6,4\""));
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn pillow_picture() {
    let svg = render(&diagram("pillow1.gem", "0", "12,34")).unwrap();
    assert_eq!(count(&svg, r#"class="square""#), 4);
    assert_eq!(count(&svg, r#"class="disc""#), 4);
    assert_eq!(count(&svg, r#"data-tube="0""#), 2);
    assert_eq!(count(&svg, r#"data-tube="1""#), 2);
    assert_eq!(count(&svg, r#"class="curve "#), 6);
}

#[test]
fn failed_family_is_drawn_dashed() {
    let d = diagram("pseudo.gem", "0", "12,34");
    assert_eq!(d["failures"][0]["family"], "Gamma");
    let gammas = d["curves"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["family"] == "Gamma")
        .count();
    let svg = render(&d).unwrap();
    assert_eq!(count(&svg, r#"class="curve gamma""#), gammas);
    assert!(count(&svg, r#"stroke-dasharray="6,4""#) > 0);

    let mut none = d.clone();
    for c in none["curves"].as_array_mut().unwrap() {
        c["selected"] = Value::Bool(false);
    }
    none["failures"] = serde_json::json!([
        {"family": "Alpha", "achieved": 0, "target": 4},
        {"family": "Beta", "achieved": 0, "target": 4},
        {"family": "Gamma", "achieved": 0, "target": 4}
    ]);
    let svg = render(&none).unwrap();
    assert_eq!(
        count(&svg, r#"class="curve "#),
        d["curves"].as_array().unwrap().len()
    );
    assert_eq!(
        count(&svg, r#"class="curve "#),
        count(&svg, r#"stroke-dasharray="6,4""#)
    );
}

#[test]
fn several_bubbles_get_several_rows() {
    let d = diagram("random4.gem", "0", "12,34");
    let rows = d["bubble_genera"].as_array().unwrap().len();
    let svg = render(&d).unwrap();
    assert_eq!(count(&svg, "^ bubble "), rows);
    assert_eq!(count(&svg, r#"class="square""#), 8);
}

#[test]
fn malformed_documents() {
    assert!(matches!(
        render(&serde_json::json!({})),
        Err(SchemaError(_))
    ));
    let mut d = diagram("melon.gem", "0", "12,34");
    d["surface"]["edges"][4]["label"]["kind"] = Value::String("Wormhole".into());
    assert!(render(&d).is_err());
    let mut d = diagram("melon.gem", "0", "12,34");
    d["curves"][0]["walk"] = serde_json::json!([999]);
    assert!(render(&d).is_err());
}
