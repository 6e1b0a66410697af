import {load} from "./loader.js";
console.log(load(21));
