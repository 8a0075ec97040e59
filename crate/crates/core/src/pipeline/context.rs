use super::Options;
use crate::surface::{build_double_kummer, epsilon, extend_with_conics, quotient_pushforward, Configuration, IsometryPerm};

/// Configurations shared by the stages, built once per run.
pub struct Context {
    pub options: Options,
    /// The 24-curve double Kummer configuration.
    pub kummer: Configuration,
    /// Kummer curves plus the conics `C1..C4`.
    pub x: Result<Configuration, String>,
    pub eps: IsometryPerm,
    /// Quotient configuration on the Enriques surface.
    pub z: Result<Configuration, String>,
    pub override_errors: Vec<String>,
}

fn apply(c: &mut Configuration, options: &Options, errors: Option<&mut Vec<String>>) {
    let mut errs = Vec::new();
    for o in &options.overrides {
        if c.contains(&o.a) && c.contains(&o.b) {
            c.set_pairing(&o.a, &o.b, o.value.clone()).expect("labels checked");
        } else {
            errs.push(format!("{o}: unknown curve label"));
        }
    }
    if let Some(e) = errors {
        *e = errs;
    }
}

impl Context {
    pub fn new(options: &Options) -> Self {
        let mut kummer = build_double_kummer();
        apply(&mut kummer, options, None);
        let eps = epsilon();
        let mut override_errors = Vec::new();
        let x = extend_with_conics(&kummer).map(|mut y| {
            apply(&mut y, options, Some(&mut override_errors));
            y
        });
        let z = match &x {
            Ok(y) => quotient_pushforward(y, &eps).map_err(|e| e.to_string()),
            Err(e) => Err(e.to_string()),
        };
        Context { options: options.clone(), kummer, x: x.map_err(|e| e.to_string()), eps, z, override_errors }
    }
}
