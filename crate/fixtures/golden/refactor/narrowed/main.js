import {describe} from "./report.js";
console.log(describe(2));
