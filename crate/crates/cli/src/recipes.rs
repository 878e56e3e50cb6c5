//! Bundled figure recipes.

pub const RECIPES: &[(&str, &str)] = &[
    ("fig2", include_str!("../recipes/fig2.conf")),
    ("fig5", include_str!("../recipes/fig5.conf")),
    ("fig6a", include_str!("../recipes/fig6a.conf")),
    ("fig6b", include_str!("../recipes/fig6b.conf")),
    ("fig6c", include_str!("../recipes/fig6c.conf")),
    ("fig8a", include_str!("../recipes/fig8a.conf")),
    ("fig8b", include_str!("../recipes/fig8b.conf")),
    ("fig8c", include_str!("../recipes/fig8c.conf")),
    ("fig9", include_str!("../recipes/fig9.conf")),
    ("fig11", include_str!("../recipes/fig11.conf")),
];

pub fn recipe(name: &str) -> Option<&'static str> {
    RECIPES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn names() -> Vec<&'static str> {
    RECIPES.iter().map(|(n, _)| *n).collect()
}
