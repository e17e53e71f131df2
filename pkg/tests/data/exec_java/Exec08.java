class Exec08 {
    static boolean check(int n) {
        boolean ok = n >= 0;
        return ok;
    }

    static int toBit(boolean flag) {
        if (flag) {
            return 1;
        }
        return 0;
    }

    public static void main(String[] args) {
        System.out.println(toBit(check(5)));
        System.out.println(toBit(check(-2)));
        System.out.println(check(0));
    }
}
