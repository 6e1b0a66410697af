import {count, label, read, set_count, set_label} from "./state.js";
set_count(5);
set_count(count + 2);
set_count(+count + 1);
var before = (set_count(+count + 1), count);
var shown = (set_label("set"), label);
console.log(read(), before, shown, (set_count(+count - 1), count + 1));
console.log(read());
