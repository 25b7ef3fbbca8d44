//! Synthetic three-generation family ABox for the instance retrieval
//! experiments, plus a concept list covering all ten concept groups.

pub const MALES: &[&str] = &[
    "adam", "bernd", "ernst", "gustav", "jonas", "karl", "oskar", "paul", "theo", "udo",
];

pub const FEMALES: &[&str] = &[
    "eva", "clara", "dora", "frieda", "hanna", "ida", "lena", "martha", "nora", "rosa", "selma",
];

/// (parent, children)
pub const HAS_CHILD: &[(&str, &[&str])] = &[
    ("adam", &["bernd", "clara", "dora"]),
    ("eva", &["bernd", "clara", "dora"]),
    ("bernd", &["gustav", "hanna"]),
    ("frieda", &["gustav", "hanna"]),
    ("clara", &["ida", "jonas", "karl"]),
    ("ernst", &["ida", "jonas", "karl"]),
    ("gustav", &["martha"]),
    ("lena", &["martha"]),
    ("hanna", &["nora"]),
    ("ida", &["paul", "rosa", "selma", "theo", "udo"]),
    ("oskar", &["paul", "rosa", "selma", "theo", "udo"]),
];

pub fn abox_lines() -> Vec<String> {
    let mut lines = Vec::new();
    let is_male = |p: &str| MALES.contains(&p);
    let mut people: Vec<&str> = MALES.iter().chain(FEMALES.iter()).copied().collect();
    people.sort_unstable();

    for person in &people {
        lines.push(format!("{person}\ttype\tperson"));
        let class = if is_male(person) { "male" } else { "female" };
        lines.push(format!("{person}\ttype\t{class}"));
    }
    for (parent, children) in HAS_CHILD {
        lines.push(format!("{parent}\ttype\tparent"));
        let class = if is_male(parent) { "father" } else { "mother" };
        lines.push(format!("{parent}\ttype\t{class}"));
        for child in *children {
            lines.push(format!("{parent}\thasChild\t{child}"));
        }
    }
    lines
}

pub fn concept_lines() -> Vec<&'static str> {
    vec![
        "manchester\tfather",
        "manchester\tnot father",
        "manchester\tmale and parent",
        "manchester\tfemale or mother",
        "manchester\thasChild some female",
        "manchester\thasChild only male",
        "manchester\thasChild min 2 female",
        "manchester\thasChild max 1 person",
        "manchester\t{adam, eva}",
        "manchester\tinverse hasChild some father",
        "dl\tmother",
        "dl\t\u{00ac}mother",
        "dl\tfemale \u{2293} parent",
        "dl\tmale \u{2294} father",
        "dl\t\u{2203}hasChild.male",
        "dl\t\u{2200}hasChild.female",
        "dl\t\u{2265} 3 hasChild.person",
        "dl\t\u{2264} 2 hasChild.person",
        "dl\t{ida, oskar}",
        "dl\t\u{2203}hasChild\u{207b}.mother",
    ]
}
