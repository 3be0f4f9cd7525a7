use std::ffi::{CStr, CString};
use std::ptr;

use kecs_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(kecs_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn named(name: &str) -> *mut KecsGraph {
    let mut g = ptr::null_mut();
    let name = CString::new(name).unwrap();
    assert_eq!(unsafe { kecs_graph_named(name.as_ptr(), &mut g) }, KecsStatus::Ok);
    g
}

#[test]
fn solve_and_certify_k33() {
    let edges: Vec<usize> = (0..3).flat_map(|u| (3..6).flat_map(move |w| [u, w])).collect();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(kecs_graph_from_edges(6, edges.as_ptr(), 9, &mut g), KecsStatus::Ok);
        assert_eq!((kecs_graph_vertex_count(g), kecs_graph_edge_count(g)), (6, 9));
        let mut s = ptr::null_mut();
        assert_eq!(kecs_solve(g, 2, KecsMethod::Flow, 0, &mut s), KecsStatus::Ok);
        assert_eq!(kecs_solution_nu(s), 6);
        assert!(kecs_solution_is_exact(s));

        let mut colors = [7u32; 9];
        assert_eq!(
            kecs_solution_colors(s, colors.as_mut_ptr(), 8),
            KecsStatus::BufferTooSmall
        );
        assert_eq!(kecs_solution_colors(s, colors.as_mut_ptr(), 9), KecsStatus::Ok);
        assert_eq!(colors.iter().filter(|&&c| c != 0).count(), 6);
        assert!(colors.iter().all(|&c| c <= 2));

        let mut cert = ptr::null_mut();
        assert_eq!(kecs_solution_certificate(s, &mut cert), KecsStatus::Ok);
        let text = CStr::from_ptr(cert).to_str().unwrap().to_string();
        let mut valid = false;
        assert_eq!(kecs_verify_certificate(cert, &mut valid), KecsStatus::Ok);
        assert!(valid);
        kecs_string_free(cert);

        let tampered = CString::new(text.replacen("\"nu\": 6", "\"nu\": 7", 1)).unwrap();
        assert_eq!(kecs_verify_certificate(tampered.as_ptr(), &mut valid), KecsStatus::Ok);
        assert!(!valid);
        assert!(!last_error().is_empty());

        kecs_solution_free(s);
        kecs_graph_free(g);
    }
}

#[test]
fn parsers_report_errors() {
    let mut g = ptr::null_mut();
    unsafe {
        let text = CString::new("p el 3 1\ne 1 1\n").unwrap();
        assert_eq!(
            kecs_graph_parse_edge_list(text.as_ptr(), &mut g),
            KecsStatus::ParseError
        );
        assert!(last_error().contains("loop"));
        let text = CString::new("p el 2 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(kecs_graph_parse_edge_list(text.as_ptr(), &mut g), KecsStatus::Ok);
        assert_eq!(kecs_graph_edge_count(g), 2);
        kecs_graph_free(g);

        let text = CString::new("DQc").unwrap();
        assert_eq!(kecs_graph_parse_graph6(text.as_ptr(), &mut g), KecsStatus::Ok);
        assert_eq!(kecs_graph_edge_count(g), 4);
        kecs_graph_free(g);
        let text = CString::new("DQ").unwrap();
        assert_eq!(kecs_graph_parse_graph6(text.as_ptr(), &mut g), KecsStatus::ParseError);

        let bad = [0usize, 0];
        assert_eq!(
            kecs_graph_from_edges(2, bad.as_ptr(), 1, &mut g),
            KecsStatus::InvalidGraph
        );
        let bad = [0usize, 5];
        assert_eq!(
            kecs_graph_from_edges(2, bad.as_ptr(), 1, &mut g),
            KecsStatus::InvalidGraph
        );
        assert_eq!(kecs_graph_from_edges(3, ptr::null(), 0, &mut g), KecsStatus::Ok);
        assert_eq!(kecs_graph_vertex_count(g), 3);
        kecs_graph_free(g);

        let name = CString::new("dodecahedron").unwrap();
        assert_eq!(kecs_graph_named(name.as_ptr(), &mut g), KecsStatus::InvalidArgument);
    }
}

#[test]
fn null_pointers_are_rejected() {
    let mut g = ptr::null_mut();
    let mut s = ptr::null_mut();
    let mut valid = false;
    unsafe {
        assert_eq!(kecs_graph_parse_edge_list(ptr::null(), &mut g), KecsStatus::NullPointer);
        assert_eq!(
            kecs_graph_from_edges(2, ptr::null(), 1, &mut g),
            KecsStatus::NullPointer
        );
        assert_eq!(
            kecs_solve(ptr::null(), 1, KecsMethod::Auto, 0, &mut s),
            KecsStatus::NullPointer
        );
        assert_eq!(
            kecs_verify_certificate(ptr::null(), &mut valid),
            KecsStatus::NullPointer
        );
        assert_eq!(kecs_graph_edge_count(ptr::null()), 0);
        assert_eq!(kecs_solution_nu(ptr::null()), 0);
        kecs_graph_free(ptr::null_mut());
        kecs_solution_free(ptr::null_mut());
        kecs_string_free(ptr::null_mut());
    }
}

#[test]
fn method_and_budget_statuses() {
    let g = named("figure1");
    let p = named("petersen");
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(
            kecs_solve(g, 2, KecsMethod::Augmenting, 0, &mut s),
            KecsStatus::NotBipartite
        );
        assert!(s.is_null());
        assert_eq!(kecs_solve(g, 2, KecsMethod::Auto, 0, &mut s), KecsStatus::Ok);
        assert_eq!(kecs_solution_nu(s), 5);
        kecs_solution_free(s);

        assert_eq!(
            kecs_solve(p, 3, KecsMethod::Oracle, 10, &mut s),
            KecsStatus::BudgetExhausted
        );
        assert!(!kecs_solution_is_exact(s));
        assert!(kecs_solution_nu(s) <= 13);
        kecs_solution_free(s);

        let mut values = [0usize; 8];
        let mut len = 0;
        assert_eq!(
            kecs_spectrum(g, 0, values.as_mut_ptr(), 2, &mut len),
            KecsStatus::BufferTooSmall
        );
        assert_eq!(len, 4);
        assert_eq!(kecs_spectrum(g, 0, values.as_mut_ptr(), 8, &mut len), KecsStatus::Ok);
        assert_eq!(&values[..len], &[0, 3, 5, 7]);
        assert_eq!(
            kecs_spectrum(p, 10, values.as_mut_ptr(), 8, &mut len),
            KecsStatus::BudgetExhausted
        );
        kecs_graph_free(g);
        kecs_graph_free(p);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/kecs.h");
    for f in [
        "kecs_last_error",
        "kecs_graph_from_edges",
        "kecs_graph_parse_edge_list",
        "kecs_graph_parse_graph6",
        "kecs_graph_named",
        "kecs_graph_vertex_count",
        "kecs_graph_edge_count",
        "kecs_graph_free",
        "kecs_solve",
        "kecs_solution_nu",
        "kecs_solution_is_exact",
        "kecs_solution_colors",
        "kecs_solution_certificate",
        "kecs_solution_free",
        "kecs_verify_certificate",
        "kecs_spectrum",
        "kecs_string_free",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f}");
    }
    assert!(header.contains("typedef struct KecsGraph KecsGraph;"));
    assert!(header.contains("KECS_STATUS_BUDGET_EXHAUSTED = 7"));
}
