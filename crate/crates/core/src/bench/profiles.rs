/// Mean region diameters of an object category, in meters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Profile {
    pub name: &'static str,
    pub d_max: f64,
    pub d_min: f64,
    /// Minimum radius views were taken from; metadata only.
    pub unit1_distance: f64,
}

pub const PROFILES: [Profile; 6] = [
    Profile {
        name: "car",
        d_max: 8.2,
        d_min: 5.4,
        unit1_distance: 3.5,
    },
    Profile {
        name: "bus",
        d_max: 17.3,
        d_min: 13.4,
        unit1_distance: 10.4,
    },
    Profile {
        name: "piano",
        d_max: 6.2,
        d_min: 4.5,
        unit1_distance: 3.1,
    },
    Profile {
        name: "table",
        d_max: 5.6,
        d_min: 3.3,
        unit1_distance: 2.5,
    },
    Profile {
        name: "chair",
        d_max: 3.4,
        d_min: 1.3,
        unit1_distance: 0.5,
    },
    Profile {
        name: "bed",
        d_max: 5.2,
        d_min: 3.2,
        unit1_distance: 2.0,
    },
];

/// Looks up a profile by case-insensitive name.
pub fn profile(name: &str) -> Option<Profile> {
    PROFILES.iter().copied().find(|p| p.name.eq_ignore_ascii_case(name))
}
