import './polyfills';
import App from './App';
App.mount();
