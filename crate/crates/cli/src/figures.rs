use anyhow::bail;

use salpeter_wigner::field::{Definition, FormChoice};
use salpeter_wigner::grid::{make_grid, PhaseSpaceGrid};
use salpeter_wigner::packets::PacketKind;
use salpeter_wigner::params::PhysicsParams;

/// A canned field configuration for one figure.
#[derive(Debug, Clone)]
pub struct Figure {
    pub id: u8,
    pub title: &'static str,
    pub definition: Definition,
    pub packet: PacketKind,
    pub params: PhysicsParams,
    pub form: FormChoice,
    pub grid: PhaseSpaceGrid,
    pub times: Vec<f64>,
}

const WINDOW_NOTE: &str =
    "windows and time stamps are chosen to show the described features; they are not taken from the original plots";

pub fn note() -> &'static str {
    WINDOW_NOTE
}

pub fn figure(id: u8) -> anyhow::Result<Figure> {
    let massless = PhysicsParams::massless(1.0)?;
    let massive = PhysicsParams::new(1.0, 1.0)?;
    let fig = match id {
        1 => Figure {
            id,
            title: "ZM function of the massless Lorentzian packet",
            definition: Definition::Zm,
            packet: PacketKind::MasslessLorentzian,
            params: massless,
            form: FormChoice::Closed,
            grid: make_grid(-8.0, 8.0, 161, -3.0, 3.0, 121, 0.0)?,
            times: vec![0.0, 2.0, 4.0],
        },
        2 => Figure {
            id,
            title: "ZM function of the massive Lorentzian packet",
            definition: Definition::Zm,
            packet: PacketKind::MassiveLorentzian,
            params: massive,
            form: FormChoice::Closed,
            grid: make_grid(-8.0, 8.0, 161, -3.0, 3.0, 121, 0.0)?,
            times: vec![0.0, 1.0, 2.0, 4.0],
        },
        3 => Figure {
            id,
            title: "negative values of the narrow massive ZM function at p = 0.01",
            definition: Definition::Zm,
            packet: PacketKind::MassiveLorentzian,
            params: PhysicsParams::new(1.0, 0.01)?,
            form: FormChoice::Closed,
            grid: make_grid(-0.5, 0.5, 1001, 0.005, 0.015, 3, 0.0)?,
            times: vec![5.0],
        },
        4 => Figure {
            id,
            title: "standard Wigner function of the massless Lorentzian packet",
            definition: Definition::Std,
            packet: PacketKind::MasslessLorentzian,
            params: massless,
            form: FormChoice::Closed,
            grid: make_grid(-8.0, 8.0, 161, -3.0, 3.0, 121, 0.0)?,
            times: vec![0.0, 1.0, 2.0, 4.0],
        },
        5 => Figure {
            id,
            title: "late-time detail of the massless standard Wigner function",
            definition: Definition::Std,
            packet: PacketKind::MasslessLorentzian,
            params: massless,
            form: FormChoice::Closed,
            grid: make_grid(-6.0, 6.0, 241, -2.0, 2.0, 161, 0.0)?,
            times: vec![4.0],
        },
        6 => Figure {
            id,
            title: "standard Wigner function of the massive Lorentzian packet",
            definition: Definition::Std,
            packet: PacketKind::MassiveLorentzian,
            params: massive,
            form: FormChoice::Quadrature,
            grid: make_grid(-6.0, 6.0, 61, -2.0, 2.0, 41, 0.0)?,
            times: vec![0.0, 1.0, 2.0, 4.0],
        },
        7 => Figure {
            id,
            title: "late-time detail of the massive standard Wigner function",
            definition: Definition::Std,
            packet: PacketKind::MassiveLorentzian,
            params: massive,
            form: FormChoice::Quadrature,
            grid: make_grid(-6.0, 6.0, 97, -1.5, 1.5, 49, 0.0)?,
            times: vec![4.0],
        },
        _ => bail!("figure id must be 1 to 7, got {id}"),
    };
    Ok(fig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use salpeter_wigner::field::FieldSpec;

    #[test]
    fn every_figure_is_consistent() {
        for id in 1..=7 {
            let f = figure(id).unwrap();
            FieldSpec::new(f.definition, f.packet, f.params, f.form).unwrap();
        }
        assert!(figure(0).is_err());
        assert!(figure(8).is_err());
    }

    #[test]
    fn narrow_packet_window_contains_the_slice() {
        let g = figure(3).unwrap().grid;
        assert!((g.p.node(1) - 0.01).abs() < 1e-15);
    }
}
