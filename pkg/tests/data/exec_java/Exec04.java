class Exec04 {
    static int gate(boolean flag, int level) {
        if (flag && level > 3) {
            return 1;
        }
        return 0;
    }

    public static void main(String[] args) {
        System.out.println(gate(true, 5));
        System.out.println(gate(true, 1));
        System.out.println(gate(false, 9));
    }
}
