fn main() {
    println!("wigprod");
}
