//! Scenarios compiled into the binary, addressable as `builtin:NAME`.

macro_rules! suites {
    ($($name:literal),* $(,)?) => {
        /// Every shipped suite with its JSON text, in listing order.
        pub const SUITES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../scenarios/", $name, ".json")))),*
        ];
    };
}

suites!(
    "gwa-weyl",
    "gwa-rank2",
    "gwa-ww",
    "gt-2",
    "gt-3",
    "lattice-gt3",
    "center-ww",
    "center-shift",
    "ore-shift",
    "pi-witness",
    "nilhecke-s3",
    "growth-weyl",
);

pub fn get(name: &str) -> Option<&'static str> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(n, _)| *n)
}
