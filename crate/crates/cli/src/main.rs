fn main() {
    let r = unigeom_cli::run(std::env::args_os());
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    std::process::exit(r.status);
}
