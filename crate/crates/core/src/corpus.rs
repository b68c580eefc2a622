//! Bundled inputs, addressable as `corpus:<name>` from the command line.

const ENTRIES: &[(&str, &str)] = &[
    ("7_3.agp", include_str!("../corpus/7_3.agp")),
    ("7_3_rep.json", include_str!("../corpus/7_3_rep.json")),
    ("bs.agp", include_str!("../corpus/bs.agp")),
    ("bs_rep.json", include_str!("../corpus/bs_rep.json")),
    ("fig8.agp", include_str!("../corpus/fig8.agp")),
    ("hnn_torus.agp", include_str!("../corpus/hnn_torus.agp")),
    ("hnn_torus_rep.json", include_str!("../corpus/hnn_torus_rep.json")),
    ("trefoil.agp", include_str!("../corpus/trefoil.agp")),
];

/// Names of all bundled files, sorted.
pub fn list() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

pub fn get(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// The presentation files only.
pub fn presentations() -> impl Iterator<Item = (&'static str, &'static str)> {
    ENTRIES.iter().copied().filter(|(n, _)| n.ends_with(".agp"))
}
