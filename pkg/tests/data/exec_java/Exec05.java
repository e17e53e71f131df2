class Exec05 {
    static int scale(int base) {
        // double then pad
        int z = base + base;
        int factor = 2;
        z += factor;
        return z;
    }

    static String label(int v) {
        if (v >= 10) return "big";
        else if (v >= 5) return "mid";
        return "tiny";
    }

    public static void main(String[] args) {
        System.out.println(scale(4));
        System.out.println(label(scale(4)));
        System.out.println(label(3));
    }
}
