class Exec03 {
    static int boundedSum(int stop) {
        int acc = 0;
        int idx = 0;
        while (idx < stop) {
            acc += idx;
            idx++;
        }
        int unused = 99;
        return acc;
    }

    public static void main(String[] args) {
        System.out.println(boundedSum(5));
        System.out.println(boundedSum(0));
    }
}
