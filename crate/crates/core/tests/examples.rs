macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::main().unwrap();
        }
    };
}

example!(finite_fields);
example!(rational_functions);
example!(coinduction);
example!(gluing);
example!(census);
example!(validation);
example!(trace_certificates);
